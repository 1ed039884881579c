//! Dirichlet characters and arbitrary periodic pseudo-character casts.
//!
//! A "cast" is any periodic coefficient vector indexed by n mod k. True
//! characters satisfy three axioms (periodicity, relative primality, complete
//! multiplicativity); everything else is a pseudo-character, which is exactly
//! the territory where the interesting counterexamples live.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::arithmetic::{totient, Factorization};

const AXIOM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum CharError {
    #[error("no character with label ({0},{1})")]
    UnknownLabel(u64, usize),
    #[error("cast file malformed at line {0}: {1}")]
    Parse(usize, String),
}

/// A periodic coefficient vector; index 0 holds the value at residue 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientCast {
    pub period: u64,
    pub values: Vec<Complex64>,
}

impl CoefficientCast {
    pub fn new(values: Vec<Complex64>) -> CoefficientCast {
        assert!(!values.is_empty());
        CoefficientCast { period: values.len() as u64, values }
    }

    /// Convenience constructor from real values.
    pub fn from_reals(values: &[f64]) -> CoefficientCast {
        CoefficientCast::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn value_at(&self, n: u64) -> Complex64 {
        self.values[(n % self.period) as usize]
    }

    /// Plain-text serialization: `period=k` then one `re im` line per residue.
    pub fn to_text(&self) -> String {
        let mut out = format!("period={}\n", self.period);
        for v in &self.values {
            out.push_str(&format!("{:.17e} {:.17e}\n", v.re, v.im));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<CoefficientCast, CharError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| CharError::Parse(1, "empty file".into()))?;
        let period: u64 = header
            .strip_prefix("period=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| CharError::Parse(1, "expected `period=k`".into()))?;
        let mut values = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let re: f64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CharError::Parse(idx + 1, "bad re".into()))?;
            let im: f64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CharError::Parse(idx + 1, "bad im".into()))?;
            values.push(Complex64::new(re, im));
        }
        if values.len() as u64 != period {
            return Err(CharError::Parse(0, format!("expected {period} values, got {}", values.len())));
        }
        Ok(CoefficientCast { period, values })
    }
}

/// First failed character axiom, if any.
#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    /// chi(n) must vanish iff gcd(n, k) > 1.
    RelativePrimality { n: u64 },
    /// chi(mn) != chi(m) chi(n).
    Multiplicativity { m: u64, n: u64 },
}

/// Check the three character axioms. Periodicity holds by construction for a
/// cast; relative primality and complete multiplicativity are checked over a
/// full residue range, which by periodicity covers all integer pairs.
pub fn is_character(cast: &CoefficientCast) -> Result<(), AxiomViolation> {
    let k = cast.period;
    for n in 0..k {
        let coprime = gcd(n, k) == 1;
        let nonzero = cast.value_at(n).norm() > AXIOM_TOL;
        if coprime != nonzero {
            return Err(AxiomViolation::RelativePrimality { n });
        }
    }
    for m in 0..k.max(2) {
        for n in m..k.max(2) {
            let lhs = cast.value_at(m * n);
            let rhs = cast.value_at(m) * cast.value_at(n);
            if (lhs - rhs).norm() > AXIOM_TOL {
                return Err(AxiomViolation::Multiplicativity { m, n });
            }
        }
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// One cyclic component of the unit group (Z/kZ)*: a generator residue and
/// its order.
#[derive(Debug, Clone)]
struct CyclicComponent {
    generator: u64,
    order: u64,
}

/// The full character group mod k with paper-style (k, j) labels, j = 1..phi(k).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub modulus: u64,
    pub rows: Vec<CoefficientCast>,
}

/// Generator pins that reproduce the coefficient casts the paper prints.
/// The labeling below is otherwise "powers of the smallest generator", which
/// is a convention the source material never states; these two moduli are the
/// ones whose casts fix it.
fn pinned_generator(k: u64) -> Option<u64> {
    match k {
        5 => Some(3),
        10 => Some(7),
        _ => None,
    }
}

fn multiplicative_order(g: u64, k: u64) -> u64 {
    let mut x = g % k;
    let mut ord = 1;
    while x != 1 {
        x = x * g % k;
        ord += 1;
    }
    ord
}

/// Cyclic decomposition of (Z/kZ)*: primitive roots for odd prime powers,
/// the {-1} x <3> structure for 2^e with e >= 3.
fn unit_group_components(k: u64) -> Vec<CyclicComponent> {
    let mut comps = Vec::new();
    for &(p, e) in &Factorization::of(k).pairs {
        let q = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => comps.push(CyclicComponent { generator: crt_lift(3, q, k), order: 2 }),
                _ => {
                    comps.push(CyclicComponent { generator: crt_lift(q - 1, q, k), order: 2 });
                    comps.push(CyclicComponent {
                        generator: crt_lift(3, q, k),
                        order: q / 4,
                    });
                }
            }
        } else {
            let phi = q / p * (p - 1);
            let g = (2..q)
                .find(|&g| g % p != 0 && multiplicative_order(g, q) == phi)
                .expect("primitive root exists for odd prime powers");
            comps.push(CyclicComponent { generator: crt_lift(g, q, k), order: phi });
        }
    }
    comps
}

/// Lift a residue g mod q to the residue mod k that is g mod q and 1 modulo
/// the complementary factor k/q (coprime to q, so the lift is unique).
fn crt_lift(g: u64, q: u64, k: u64) -> u64 {
    let other = k / q;
    let mut x = g % q;
    while x % other != 1 % other {
        x += q;
    }
    x
}

impl CharacterTable {
    /// Build all phi(k) characters mod k.
    pub fn enumerate(k: u64) -> CharacterTable {
        assert!(k >= 1);
        let phi = if k == 1 { 1 } else { totient(k) };
        let comps: Vec<CyclicComponent> = if k <= 2 {
            Vec::new()
        } else if let Some(g) = pinned_generator(k) {
            vec![CyclicComponent { generator: g, order: totient(k) }]
        } else {
            let comps = unit_group_components(k);
            if comps.len() == 1 {
                comps
            } else if is_cyclic(&comps) {
                // single-generator relabeling keeps the (k, j) = power-of-g rule
                let g = smallest_generator(k, phi);
                vec![CyclicComponent { generator: g, order: phi }]
            } else {
                comps
            }
        };
        // index table: residue -> exponent tuple
        let mut index: Vec<Option<Vec<u64>>> = vec![None; k.max(1) as usize];
        let radices: Vec<u64> = comps.iter().map(|c| c.order).collect();
        enumerate_exponents(&radices, &mut |expos| {
            let mut r = 1u64 % k.max(1);
            for (c, &e) in comps.iter().zip(expos) {
                r = r * pow_mod(c.generator, e, k) % k;
            }
            if index[r as usize].is_none() {
                index[r as usize] = Some(expos.to_vec());
            }
        });
        if k == 1 {
            index = vec![Some(vec![])];
        }
        // characters: one row per exponent tuple in mixed-radix order
        let mut rows = Vec::with_capacity(phi as usize);
        enumerate_exponents(&radices, &mut |char_expos| {
            let mut values = vec![Complex64::new(0.0, 0.0); k.max(1) as usize];
            for n in 0..k.max(1) {
                if let Some(expos) = &index[n as usize] {
                    let mut phase = 0.0f64;
                    for ((&t, &s), c) in char_expos.iter().zip(expos.iter()).zip(&comps) {
                        phase += TAU * (t as f64) * (s as f64) / c.order as f64;
                    }
                    values[n as usize] = Complex64::new(phase.cos(), phase.sin());
                }
            }
            if comps.is_empty() {
                for n in 0..k.max(1) {
                    if gcd(n, k.max(1)) == 1 || k == 1 {
                        values[n as usize] = Complex64::new(1.0, 0.0);
                    }
                }
            }
            rows.push(CoefficientCast { period: k.max(1), values });
        });
        CharacterTable { modulus: k, rows }
    }

    pub fn count(&self) -> usize {
        self.rows.len()
    }

    /// chi_j(n) for the paper-style 1-based label j.
    pub fn char_value(&self, j: usize, n: u64) -> Result<Complex64, CharError> {
        let row = self
            .rows
            .get(j.wrapping_sub(1))
            .ok_or(CharError::UnknownLabel(self.modulus, j))?;
        Ok(row.value_at(n))
    }

    pub fn cast(&self, j: usize) -> Result<&CoefficientCast, CharError> {
        self.rows.get(j.wrapping_sub(1)).ok_or(CharError::UnknownLabel(self.modulus, j))
    }

    /// Label of the principal character (always 1 in this ordering).
    pub fn principal(&self) -> usize {
        1
    }

    /// True when chi_j is the principal character.
    pub fn is_principal(&self, j: usize) -> bool {
        self.rows
            .get(j.wrapping_sub(1))
            .map(|row| {
                row.values
                    .iter()
                    .all(|v| v.norm() < AXIOM_TOL || (v - 1.0).norm() < AXIOM_TOL)
            })
            .unwrap_or(false)
    }
}

fn is_cyclic(comps: &[CyclicComponent]) -> bool {
    // cyclic iff component orders are pairwise coprime
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if gcd(comps[i].order, comps[j].order) != 1 {
                return false;
            }
        }
    }
    true
}

fn smallest_generator(k: u64, phi: u64) -> u64 {
    (2..k)
        .find(|&g| gcd(g, k) == 1 && multiplicative_order(g, k) == phi)
        .expect("group is cyclic")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn enumerate_exponents(radices: &[u64], f: &mut impl FnMut(&[u64])) {
    let mut expos = vec![0u64; radices.len()];
    loop {
        f(&expos);
        let mut i = 0;
        loop {
            if i == radices.len() {
                return;
            }
            expos[i] += 1;
            if expos[i] < radices[i] {
                break;
            }
            expos[i] = 0;
            i += 1;
        }
        if radices.is_empty() {
            return;
        }
    }
}

/// The deterministic builtin coefficient sequences of the zero-statistics
/// experiments.
#[derive(Debug, Clone)]
pub enum BuiltinCast {
    /// Equidistributed random coefficients from {-1, 0, 1}, seeded.
    Random101 { seed: u64 },
    /// Zero at even n; at odd n the recursive sign vector v = [v, -v].
    MorseThue,
    /// a_n = exp(2 pi i gamma n) with gamma the golden mean (sqrt(5)-1)/2.
    GoldenAngle,
    /// signs[j] at n = 1 + j*step, zero elsewhere.
    ArithmeticProgression { step: u64, signs: Vec<f64> },
}

/// Materialize the first N coefficients (index i holds a_{i+1}).
pub fn builtin_cast(kind: &BuiltinCast, n: usize) -> Vec<Complex64> {
    use rand::{Rng, SeedableRng};
    let mut out = Vec::with_capacity(n);
    match kind {
        BuiltinCast::Random101 { seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..n {
                let v = rng.random_range(0..3) as f64 - 1.0;
                out.push(Complex64::new(v, 0.0));
            }
        }
        BuiltinCast::MorseThue => {
            for i in 1..=n as u64 {
                let v = if i % 2 == 0 {
                    0.0
                } else {
                    let j = (i - 1) / 2;
                    if j.count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                };
                out.push(Complex64::new(v, 0.0));
            }
        }
        BuiltinCast::GoldenAngle => {
            let gamma = (5.0f64.sqrt() - 1.0) / 2.0;
            for i in 1..=n as u64 {
                let phase = TAU * gamma * i as f64;
                out.push(Complex64::new(phase.cos(), phase.sin()));
            }
        }
        BuiltinCast::ArithmeticProgression { step, signs } => {
            for i in 1..=n as u64 {
                let v = if (i - 1) % step == 0 {
                    signs[((i - 1) / step) as usize % signs.len()]
                } else {
                    0.0
                };
                out.push(Complex64::new(v, 0.0));
            }
        }
    }
    out
}
