//! Integer and rational arithmetic: sieves, multiplicative functions,
//! multiplicative partitions, Ramanujan tau, Farey/mediant machinery, and the
//! ring-species counts behind the all-ones zeta coefficients.

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ArithError {
    #[error("tau({0}) overflows 128-bit intermediate arithmetic")]
    TauOverflow(u64),
    #[error("unsupported field order {0}: only primes and 9 are handled")]
    UnsupportedField(u64),
    #[error("expected a fraction in (0,1), got {0}/{1}")]
    FractionRange(i64, i64),
}

/// Primes up to and including `limit`, by the classic sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for 0..=n (0 marks primes), plus the primes.
/// Linear sieve; the usual engine behind bulk Mobius/Liouville tables.
pub fn linear_sieve(n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut spf = vec![0u32; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if ip > n {
                break;
            }
            spf[ip] = p;
            if i % p as usize == 0 {
                break;
            }
        }
    }
    (spf, primes)
}

/// Mobius function values mu(0..=n); mu(0) is set to 0.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let (spf, _) = linear_sieve(n);
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        let p = spf[i];
        if p == 0 {
            mu[i] = -1;
        } else {
            let m = i / p as usize;
            mu[i] = if m % p as usize == 0 { 0 } else { -mu[m] };
        }
    }
    mu
}

/// Liouville function values lambda(0..=n) = (-1)^Omega(n).
pub fn liouville_table(n: usize) -> Vec<i8> {
    let (spf, _) = linear_sieve(n);
    let mut lam = vec![0i8; n + 1];
    if n >= 1 {
        lam[1] = 1;
    }
    for i in 2..=n {
        let p = if spf[i] == 0 { i as u32 } else { spf[i] };
        lam[i] = -lam[i / p as usize];
    }
    lam
}

/// Prime factorization as sorted (prime, exponent) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Trial division; adequate for n <= 1e8.
    pub fn of(n: u64) -> Factorization {
        let mut pairs = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                pairs.push((p, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            pairs.push((m, 1));
        }
        Factorization { pairs }
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// The named arithmetic functions, one entry point per kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultFnKind {
    Mobius,
    Liouville,
    VonMangoldt,
    Totient,
    Sigma(u32),
    BigOmega,
}

/// Dispatcher over the named arithmetic functions; n >= 1.
pub fn mult_fn(kind: MultFnKind, n: u64) -> f64 {
    match kind {
        MultFnKind::Mobius => mobius(n) as f64,
        MultFnKind::Liouville => liouville(n) as f64,
        MultFnKind::VonMangoldt => von_mangoldt(n),
        MultFnKind::Totient => totient(n) as f64,
        MultFnKind::Sigma(k) => sigma_k(n, k) as f64,
        MultFnKind::BigOmega => big_omega(n) as f64,
    }
}

pub fn mobius(n: u64) -> i32 {
    let f = Factorization::of(n);
    if f.pairs.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.pairs.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn big_omega(n: u64) -> u32 {
    Factorization::of(n).pairs.iter().map(|&(_, e)| e).sum()
}

pub fn liouville(n: u64) -> i32 {
    if big_omega(n) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Lambda(n) = log p when n = p^k, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    let f = Factorization::of(n);
    if f.pairs.len() == 1 {
        (f.pairs[0].0 as f64).ln()
    } else {
        0.0
    }
}

pub fn totient(n: u64) -> u64 {
    let mut phi = n;
    for &(p, _) in &Factorization::of(n).pairs {
        phi = phi / p * (p - 1);
    }
    phi
}

/// sigma(n, k) = sum over divisors d of n of d^k, exactly in i128.
pub fn sigma_k(n: u64, k: u32) -> i128 {
    let mut s = 1i128;
    for &(p, e) in &Factorization::of(n).pairs {
        // geometric series 1 + p^k + ... + p^{ek}
        let pk = (p as i128).pow(k);
        let mut term = 1i128;
        let mut block = 1i128;
        for _ in 0..e {
            term *= pk;
            block += term;
        }
        s *= block;
    }
    s
}

/// Number of unordered factorizations of n into parts >= 2; with `signed`,
/// each factorization contributes (-1)^(number of parts), which is the
/// coefficient sequence of the inverse shifted product 1/prod(1 + n^-z).
pub fn unordered_factorizations(n: u64, signed: bool) -> i64 {
    fn recurse(max_part: u64, n: u64, signed: bool) -> i64 {
        if n == 1 {
            return 1;
        }
        let mut total = 0i64;
        for d in 2..=max_part.min(n) {
            if n % d == 0 {
                let sub = recurse(d, n / d, signed);
                total += if signed { -sub } else { sub };
            }
        }
        total
    }
    recurse(n, n, signed)
}

/// Ramanujan tau via the sigma(.,3)/sigma(.,5) convolution, exactly in i128.
///
/// tau(n) = (5 sigma(n,3) + 7 sigma(n,5)) n/12
///          - 35 sum_{k<n} (6k - 4(n-k)) sigma(k,3) sigma(n-k,5)
pub fn ramanujan_tau(n: u64) -> Result<i128, ArithError> {
    let overflow = || ArithError::TauOverflow(n);
    let lead_num = (5 * sigma_k(n, 3) + 7 * sigma_k(n, 5))
        .checked_mul(n as i128)
        .ok_or_else(overflow)?;
    debug_assert_eq!(lead_num % 12, 0);
    let mut acc = lead_num / 12;
    for k in 1..n {
        let weight = 6 * k as i128 - 4 * (n - k) as i128;
        let term = weight
            .checked_mul(sigma_k(k, 3))
            .and_then(|t| t.checked_mul(sigma_k(n - k, 5)))
            .ok_or_else(overflow)?;
        acc = acc.checked_sub(35 * term).ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Fraction {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Fraction { num: sign * num / g, den: sign * den / g }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Mediant (n1+n2)/(d1+d2) of two fractions, reduced.
pub fn mediant(a: Fraction, b: Fraction) -> Fraction {
    Fraction::new(a.num + b.num, a.den + b.den)
}

/// The Farey sequence F_n in [0,1], ascending, by the adjacent-term recurrence.
pub fn farey(n: u64) -> Vec<Fraction> {
    let n = n as i64;
    let mut seq = vec![Fraction::new(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    while c <= n {
        seq.push(Fraction::new(c, d));
        let k = (n + b) / d;
        let (c2, d2) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = c2;
        d = d2;
    }
    seq
}

/// Continued fraction [a1, a2, ...] of a value in (0,1): x = 1/(a1 + 1/(a2 + ...)).
/// Canonical form ends in a term >= 2 (except for [1] itself never arising here,
/// since values are strictly below 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn from_fraction(x: Fraction) -> Result<ContinuedFraction, ArithError> {
        if x.num <= 0 || x.num >= x.den {
            return Err(ArithError::FractionRange(x.num, x.den));
        }
        let (mut p, mut q) = (x.den as u64, x.num as u64);
        let mut terms = Vec::new();
        while q > 0 {
            terms.push(p / q);
            let r = p % q;
            p = q;
            q = r;
        }
        // Euclid on a reduced fraction in (0,1) already yields the canonical
        // form: the final quotient cannot be 1 unless the value is 1/1.
        debug_assert!(*terms.last().unwrap() >= 2 || terms.len() == 1);
        Ok(ContinuedFraction { terms })
    }

    pub fn value(&self) -> Fraction {
        let (mut num, mut den) = (0i64, 1i64);
        for &a in self.terms.iter().rev() {
            // x -> 1/(a + x)
            let next_den = a as i64 * den + num;
            num = den;
            den = next_den;
        }
        Fraction::new(num, den)
    }

    /// The two Farey-tree descendants: add 1 to the last term of each of the
    /// two equivalent expansions [.., a] = [.., a-1, 1].
    pub fn farey_children(&self) -> (Fraction, Fraction) {
        let mut long = self.terms.clone();
        *long.last_mut().unwrap() += 1;
        let mut short = self.terms.clone();
        *short.last_mut().unwrap() -= 1;
        if *short.last().unwrap() == 0 {
            short.pop();
        }
        short.push(2);
        (
            ContinuedFraction { terms: long }.value(),
            ContinuedFraction { terms: short }.value(),
        )
    }
}

/// Number of square roots of -1 in F_q for prime q, or in F_9 built as
/// F_3[x]/(x^2+1). Brute force over the field elements.
pub fn sqrt_minus_one_count(q: u64) -> Result<u32, ArithError> {
    if q == 9 {
        // elements a + b*alpha with alpha^2 = -1; (a+b*alpha)^2 = a^2-b^2 + 2ab*alpha
        let mut count = 0;
        for a in 0..3u64 {
            for b in 0..3u64 {
                let re = (a * a + 2 * 3 - b * b) % 3;
                let im = (2 * a * b) % 3;
                if re == 2 && im == 0 {
                    count += 1;
                }
            }
        }
        return Ok(count);
    }
    let is_prime = q >= 2 && Factorization::of(q).pairs == vec![(q, 1)];
    if !is_prime {
        return Err(ArithError::UnsupportedField(q));
    }
    let mut count = 0;
    for r in 0..q {
        if (r * r) % q == (q - 1) % q {
            count += 1;
        }
    }
    Ok(count)
}

/// The species count behind the all-ones zeta coefficients: over multisets of
/// prime powers {p_i^{m_i}} with product n, sum 1/(prod m_i * prod c_j!) where
/// c_j are the multiplicities of equal factors. Equals 1 for every n.
pub fn field_product_species(n: u64) -> Ratio<i64> {
    fn is_prime_power(q: u64) -> Option<u32> {
        let f = Factorization::of(q);
        if f.pairs.len() == 1 {
            Some(f.pairs[0].1)
        } else {
            None
        }
    }
    // factors chosen in non-increasing order; run-length of equal parts gives c_j
    fn recurse(n: u64, max_part: u64, prev: u64, run: u64, weight: Ratio<i64>) -> Ratio<i64> {
        if n == 1 {
            return weight;
        }
        let mut total = Ratio::new(0, 1);
        let mut d = max_part.min(n);
        while d >= 2 {
            if n % d == 0 {
                if let Some(m) = is_prime_power(d) {
                    let run2 = if d == prev { run + 1 } else { 1 };
                    let w = weight / Ratio::new((m as i64) * run2 as i64, 1);
                    total += recurse(n / d, d, d, run2, w);
                }
            }
            d -= 1;
        }
        total
    }
    if n == 1 {
        return Ratio::new(1, 1);
    }
    recurse(n, n, 0, 0, Ratio::new(1, 1))
}
