//! Exact arithmetic in `ℚ(ζ_N)`, elements stored in the power basis
//! `1, ζ, …, ζ^{φ(N)−1}` modulo the cyclotomic polynomial `Φ_N`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::phase::Phase;

/// Element of a [`CyclotomicField`]: rational coefficients in the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc(pub Vec<BigRational>);

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// `ℚ(ζ_N)` with `ζ_N = exp(2πi/N)`.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: usize,
    degree: usize,
    /// Coefficients of `Φ_N`, lowest degree first (monic).
    modulus: Vec<BigInt>,
    /// `ζ^k` reduced, for `0 ≤ k < N`.
    powers: Vec<Vec<BigInt>>,
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // Both monic with integer coefficients, lowest degree first.
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0);
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    pub fn new(order: usize) -> CyclotomicField {
        assert!(order > 0, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // Multiply by ζ and reduce the top coefficient with Φ_N.
            let top = cur[degree - 1].clone();
            let mut next = vec![BigInt::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] -= &top * &modulus[i];
                }
            }
            cur = next;
        }
        CyclotomicField { order, degree, modulus, powers }
    }

    /// Smallest field containing every phase in `phases`.
    pub fn for_phases<'a>(phases: impl IntoIterator<Item = &'a Phase>) -> CyclotomicField {
        let n = phases.into_iter().fold(1i64, |acc, p| acc.lcm(&p.den()));
        CyclotomicField::new(n as usize)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(N)`, the dimension over `ℚ`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![BigRational::zero(); self.degree])
    }

    pub fn one(&self) -> Cyc {
        self.zeta_pow(0)
    }

    pub fn from_rational(&self, q: BigRational) -> Cyc {
        let mut c = self.zero();
        c.0[0] = q;
        c
    }

    pub fn from_int(&self, k: i64) -> Cyc {
        self.from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// `ζ^k`, with `k` taken modulo `N`.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let k = k.rem_euclid(self.order as i64) as usize;
        Cyc(self.powers[k].iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    /// Reduced integer coefficients of `ζ^k`.
    pub fn zeta_pow_coeffs(&self, k: i64) -> &[BigInt] {
        &self.powers[k.rem_euclid(self.order as i64) as usize]
    }

    /// The circle value `exp(2πi·p)`. Panics if the denominator does not divide `N`.
    pub fn from_phase(&self, p: Phase) -> Cyc {
        let k = p.over(self.order as i64).expect("phase denominator divides the field order");
        self.zeta_pow(k)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Cyc, q: &BigRational) -> Cyc {
        Cyc(a.0.iter().map(|x| x * q).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.powers[(i + j) % self.order].iter().enumerate() {
                    if !c.is_zero() {
                        out.0[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// `a · exp(2πi·p)` without a general multiplication.
    pub fn mul_phase(&self, a: &Cyc, p: Phase) -> Cyc {
        let k = p.over(self.order as i64).expect("phase denominator divides the field order");
        self.mul(a, &self.zeta_pow(k))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut out = self.zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in self.powers[(self.order - i) % self.order].iter().enumerate() {
                if !c.is_zero() {
                    out.0[k] += x * c;
                }
            }
        }
        out
    }

    /// Sum of circle values.
    pub fn sum_phases(&self, phases: impl IntoIterator<Item = Phase>) -> Cyc {
        let mut acc = vec![BigInt::zero(); self.degree];
        for p in phases {
            let k = p.over(self.order as i64).expect("phase denominator divides the field order");
            for (a, c) in acc.iter_mut().zip(self.zeta_pow_coeffs(k)) {
                *a += c;
            }
        }
        Cyc(acc.into_iter().map(BigRational::from_integer).collect())
    }

    /// Floating-point value, for reporting only.
    pub fn to_complex(&self, a: &Cyc) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in a.0.iter().enumerate() {
            let v = rational_to_f64(c);
            let t = core::f64::consts::TAU * k as f64 / self.order as f64;
            re += v * libm::cos(t);
            im += v * libm::sin(t);
        }
        (re, im)
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Dense square matrix over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    pub dim: usize,
    pub entries: Vec<Cyc>,
}

impl CycMatrix {
    pub fn zeros(field: &CyclotomicField, dim: usize) -> CycMatrix {
        CycMatrix { dim, entries: vec![field.zero(); dim * dim] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, field: &CyclotomicField, rhs: &CycMatrix) -> CycMatrix {
        let n = self.dim;
        let mut out = CycMatrix::zeros(field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2usize, 3, 4, 6, 12] {
            let f = CyclotomicField::new(n);
            let s = f.sum_phases((0..n as i64).map(|k| Phase::new(k, n as i64)));
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn multiplication_and_conjugation() {
        let f = CyclotomicField::new(12);
        let z = f.zeta_pow(1);
        let mut p = f.one();
        for _ in 0..12 {
            p = f.mul(&p, &z);
        }
        assert_eq!(p, f.one());
        assert_eq!(f.mul(&z, &f.conj(&z)), f.one());
        let a = f.add(&f.zeta_pow(5), &f.from_int(3));
        let (re, im) = f.to_complex(&a);
        let t = core::f64::consts::TAU * 5.0 / 12.0;
        assert!((re - (3.0 + libm::cos(t))).abs() < 1e-12);
        assert!((im - libm::sin(t)).abs() < 1e-12);
    }

    #[test]
    fn trivial_field() {
        let f = CyclotomicField::new(1);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.sum_phases([Phase::ZERO, Phase::ZERO]), f.from_int(2));
    }
}
