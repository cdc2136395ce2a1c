//! Exact arithmetic in `Q(ζ_m) = Q[x] / Φ_m(x)`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 = prod_{d | m} Φ_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Quotient of `a` by the monic polynomial `b`, which must divide exactly.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    q
}

/// An element of `Q(ζ_m)` in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicElement {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn zero(conductor: u32) -> Self {
        let degree = cyclotomic_polynomial(conductor).len() - 1;
        Self { conductor, coeffs: vec![BigRational::zero(); degree] }
    }

    pub fn from_integer(conductor: u32, c: i64) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = BigRational::from_integer(BigInt::from(c));
        z
    }

    /// `ζ_m^k`.
    pub fn root_power(conductor: u32, k: i64) -> Self {
        let mut poly = vec![0i128; conductor as usize];
        poly[k.rem_euclid(conductor as i64) as usize] = 1;
        Self::from_group_ring(conductor, &poly)
    }

    /// Image of `Σ c_k x^k` in `Z[x]/(x^m - 1)` under `x ↦ ζ_m`.
    pub fn from_group_ring(conductor: u32, coeffs: &[i128]) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        let mut rem: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        for i in (degree..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(degree) {
                rem[i - degree + j] -= &c * pj;
            }
        }
        rem.resize(degree, BigInt::zero());
        Self { conductor, coeffs: rem.into_iter().map(BigRational::from_integer).collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// The value as a non-negative machine integer, if it is one.
    pub fn as_natural(&self) -> Option<u64> {
        let q = self.as_rational()?;
        if !q.is_integer() || q.is_negative() {
            return None;
        }
        q.to_integer().to_u64()
    }
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn add(self, rhs: Self) -> CyclotomicElement {
        assert_eq!(self.conductor, rhs.conductor, "mismatched conductors");
        CyclotomicElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn mul(self, rhs: Self) -> CyclotomicElement {
        assert_eq!(self.conductor, rhs.conductor, "mismatched conductors");
        let phi = cyclotomic_polynomial(self.conductor);
        let degree = phi.len() - 1;
        let mut prod = vec![BigRational::zero(); 2 * degree];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        for i in (degree..prod.len()).rev() {
            let c = std::mem::take(&mut prod[i]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(degree) {
                prod[i - degree + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
        prod.truncate(degree);
        CyclotomicElement { conductor: self.conductor, coeffs: prod }
    }
}
