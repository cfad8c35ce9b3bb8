//! Exact arithmetic in cyclotomic fields `Q(zeta_p)`, elements stored as
//! residues modulo the p-th cyclotomic polynomial.
//!
//! A value of order 1 is a plain rational; mixed-order arithmetic is
//! supported only by promoting rationals into the larger field. Values
//! whose non-constant coordinates vanish are demoted back to order 1 so
//! that equality is representation-independent.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::rational::{format_rational, Rational};
use super::{Field, IntegralDomain, Ring};
use crate::error::{Error, Result};

/// Euler totient.
pub fn euler_phi(p: u32) -> u32 {
    let mut n = p;
    let mut result = p;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The p-th cyclotomic polynomial, coefficients in ascending degree.
/// Computed by dividing `x^p - 1` by the product of `Phi_d` over proper
/// divisors d of p.
pub fn cyclotomic_polynomial(p: u32) -> Vec<BigInt> {
    assert!(p >= 1);
    if let Some(c) = CYCLO_CACHE.lock().unwrap().get(&p) {
        return c.clone();
    }
    let result = if p == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^p - 1
        let mut num = vec![BigInt::zero(); p as usize + 1];
        num[0] = BigInt::from(-1);
        num[p as usize] = BigInt::one();
        for d in 1..p {
            if p % d == 0 {
                num = poly_div_exact_int(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    CYCLO_CACHE
        .lock()
        .unwrap()
        .insert(p, result.clone());
    result
}

/// Exact division of integer polynomials (ascending coefficients), both
/// operands with invertible leading coefficient +-1; panics on nonzero
/// remainder.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut num: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    let nd = num.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let q = &num[k + dd] / &lead;
        quot[k] = q.clone();
        for j in 0..=dd {
            let v = &num[k + j] - &q * &den[j];
            num[k + j] = v;
        }
    }
    assert!(num.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// Element of `Q(zeta_p)`: coefficient vector of length `phi(p)` in the
/// power basis `1, zeta, ..., zeta^{phi(p)-1}`. Order 1 means rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(n)))
    }

    /// The primitive root `zeta_p`.
    pub fn zeta(p: u32) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// `zeta_p^k` (k may be negative).
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        assert!(p >= 1);
        let k = k.rem_euclid(p as i64) as u32;
        let deg = euler_phi(p) as usize;
        let mut poly = vec![<Rational as Ring>::zero(); k as usize + 1];
        poly[k as usize] = <Rational as Ring>::one();
        Self::reduce(p, deg, poly)
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let deg = euler_phi(order) as usize;
        if coeffs.len() != deg {
            return Err(Error::Invalid(format!(
                "expected {deg} coefficients for order {order}, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::normalize(Cyclotomic { order, coeffs }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Reduce an arbitrary-length coefficient vector mod `Phi_p`.
    fn reduce(p: u32, deg: usize, mut poly: Vec<Rational>) -> Self {
        if p == 1 {
            let v = poly.into_iter().fold(<Rational as Ring>::zero(), |a, b| a + b);
            return Cyclotomic { order: 1, coeffs: vec![v] };
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(p)
            .into_iter()
            .map(Rational::from)
            .collect();
        while poly.len() > deg {
            let top = poly.len() - 1;
            let lead = poly[top].clone();
            if !Ring::is_zero(&lead) {
                let shift = top - deg;
                for (j, pc) in phi.iter().enumerate().take(deg) {
                    let v = &poly[shift + j] - &lead * pc;
                    poly[shift + j] = v;
                }
            }
            poly.pop();
        }
        poly.resize(deg, <Rational as Ring>::zero());
        Self::normalize(Cyclotomic { order: p, coeffs: poly })
    }

    fn normalize(mut self) -> Self {
        if self.order > 1 && self.coeffs[1..].iter().all(|c| Ring::is_zero(c)) {
            let c = self.coeffs.swap_remove(0);
            return Cyclotomic { order: 1, coeffs: vec![c] };
        }
        self
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Promote to the field of the given order (no-op when already there).
    pub fn promote(&self, order: u32) -> Self {
        if self.order == order {
            return self.clone();
        }
        assert!(
            self.order == 1,
            "cannot mix cyclotomic orders {} and {}",
            self.order,
            order
        );
        let deg = euler_phi(order) as usize;
        let mut coeffs = vec![<Rational as Ring>::zero(); deg];
        coeffs[0] = self.coeffs[0].clone();
        // no normalize: a pure rational stays order 1 unless forced
        Cyclotomic { order, coeffs }
    }

    fn common_order(&self, other: &Self) -> u32 {
        if self.order == other.order {
            self.order
        } else if self.order == 1 {
            other.order
        } else if other.order == 1 {
            self.order
        } else {
            panic!(
                "cannot mix cyclotomic orders {} and {}",
                self.order, other.order
            )
        }
    }

    /// The field automorphism `zeta -> zeta^{-1}` (complex conjugation
    /// under the canonical embedding `zeta -> e^{2 pi i / p}`).
    pub fn conjugate(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let p = self.order;
        let deg = euler_phi(p) as usize;
        let mut poly = vec![<Rational as Ring>::zero(); (p as usize - 1) * (deg - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            // zeta^{-i} = zeta^{p - i}
            let e = ((p as usize) - i) % p as usize;
            let v = &poly[e] + c;
            poly[e] = v;
        }
        Self::reduce(p, deg, poly)
    }

    /// `z * conj(z)`; lies in the real subfield.
    pub fn abs_square(&self) -> Self {
        self.mul(&self.conjugate())
    }

    /// `|z|^2` certified rational, or an error if it is irrational.
    pub fn abs_square_rational(&self) -> Result<Rational> {
        let a = self.abs_square();
        a.as_rational().cloned().ok_or_else(|| {
            Error::Invalid(format!("|z|^2 not rational for {a}"))
        })
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Deterministic total order used to pick canonical orbit
    /// representatives: lower degree in zeta first (so the class of a
    /// rational is represented by the rational), then coefficients in
    /// order, each by absolute value with positive preferred on ties,
    /// so e.g. 29 sorts before -29 and both before 30.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let p = self.common_order(other);
        let a = self.promote(p);
        let b = other.promote(p);
        let deg = |c: &Cyclotomic| c.coeffs.iter().rposition(|x| !num_traits::Zero::is_zero(x));
        match deg(&a).cmp(&deg(&b)) {
            Ordering::Equal => {}
            o => return o,
        }
        for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
            match rational_key_cmp(x, y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

fn rational_key_cmp(x: &Rational, y: &Rational) -> Ordering {
    use num_traits::Signed;
    match x.abs().cmp(&y.abs()) {
        Ordering::Equal => y.cmp(x),
        o => o,
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(<Rational as Ring>::zero())
    }

    fn one() -> Self {
        Self::from_rational(<Rational as Ring>::one())
    }

    fn add(&self, other: &Self) -> Self {
        let p = self.common_order(other);
        let a = self.promote(p);
        let b = other.promote(p);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Self::normalize(Cyclotomic { order: p, coeffs })
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let p = self.common_order(other);
        if p == 1 {
            return Self::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        let a = self.promote(p);
        let b = other.promote(p);
        let deg = euler_phi(p) as usize;
        let mut poly = vec![<Rational as Ring>::zero(); 2 * deg];
        for (i, x) in a.coeffs.iter().enumerate() {
            if Ring::is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if Ring::is_zero(y) {
                    continue;
                }
                let v = &poly[i + j] + x * y;
                poly[i + j] = v;
            }
        }
        Self::reduce(p, deg, poly)
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.order == 1 && Ring::is_zero(&self.coeffs[0])
    }
}

impl IntegralDomain for Cyclotomic {
    fn exact_div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Field for Cyclotomic {
    /// Inverse via the extended Euclidean algorithm in `Q[x]` mod `Phi_p`.
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "division by zero");
        if self.order == 1 {
            return Self::from_rational(<Rational as Ring>::one() / &self.coeffs[0]);
        }
        let p = self.order;
        let phi: Vec<Rational> = cyclotomic_polynomial(p)
            .into_iter()
            .map(Rational::from)
            .collect();
        // extended euclid: r0 = Phi_p, r1 = self; track s only for r1 side
        let mut r0 = phi;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1 = vec![<Rational as Ring>::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a nonzero constant since Phi_p is irreducible)
        assert_eq!(r0.len(), 1, "Phi_p not coprime to element");
        let c = r0[0].clone();
        let inv: Vec<Rational> = s0.iter().map(|x| x / &c).collect();
        Self::reduce(p, euler_phi(p) as usize, inv)
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().map_or(false, |c| Ring::is_zero(c)) {
        v.pop();
    }
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![<Rational as Ring>::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let q = rem[dr].clone() / lead;
        quot[dr - db] = q.clone();
        for j in 0..=db {
            let v = &rem[dr - db + j] - &q * &b[j];
            rem[dr - db + j] = v;
        }
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![<Rational as Ring>::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let v = &out[i + j] + x * y;
            out[i + j] = v;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![<Rational as Ring>::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        let v = &out[i] - y;
        out[i] = v;
    }
    let mut out = out;
    trim(&mut out);
    out
}

impl std::fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", format_rational(&self.coeffs[0]));
        }
        let mut terms = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            let cs = format_rational(c);
            terms.push(match i {
                0 => cs,
                1 if cs == "1" => "z".into(),
                1 if cs == "-1" => "-z".into(),
                1 => format!("{cs}*z"),
                _ if cs == "1" => format!("z^{i}"),
                _ if cs == "-1" => format!("-z^{i}"),
                _ => format!("{cs}*z^{i}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join("+").replace("+-", "-"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn phi_1_is_x_minus_1() {
        assert_eq!(cyclotomic_polynomial(1), big(&[-1, 1]));
    }

    #[test]
    fn phi_6_by_recursive_division() {
        // oracle: x^6-1 divided by Phi_1 Phi_2 Phi_3 computed directly
        let p1 = big(&[-1, 1]);
        let p2 = big(&[1, 1]);
        let p3 = big(&[1, 1, 1]);
        let mut num = vec![BigInt::zero(); 7];
        num[0] = BigInt::from(-1);
        num[6] = BigInt::from(1);
        let q = poly_div_exact_int(&num, &p1);
        let q = poly_div_exact_int(&q, &p2);
        let q = poly_div_exact_int(&q, &p3);
        assert_eq!(q, big(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(6), q);
    }

    #[test]
    fn phi_5() {
        assert_eq!(cyclotomic_polynomial(5), big(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn zeta6_identities() {
        let z = Cyclotomic::zeta(6);
        // zeta^6 = 1, zeta^k != 1 for 0<k<6
        assert!(Ring::is_one(&z.pow(6)));
        for k in 1..6 {
            assert!(!Ring::is_one(&z.pow(k)));
        }
        // zeta^2 - zeta + 1 = 0
        let v = z.mul(&z).sub(&z).add(&Cyclotomic::one());
        assert!(Ring::is_zero(&v));
    }

    #[test]
    fn conjugate_examples() {
        let z = Cyclotomic::zeta(6);
        // conj(zeta) = zeta^5 = 1 - zeta
        let expect = Cyclotomic::one().sub(&z);
        assert_eq!(z.conjugate(), expect);
        // rationals fixed
        let three = Cyclotomic::from_int(3);
        assert_eq!(three.conjugate(), three);
        // zeta^2 + 1 = zeta, so its conjugate is 1 - zeta
        let v = z.pow(2).add(&Cyclotomic::one()).conjugate();
        assert_eq!(v, Cyclotomic::one().sub(&z));
    }

    #[test]
    fn abs_square_examples() {
        let z = Cyclotomic::zeta(6);
        // |zeta - 1|^2 = 1
        let v = z.sub(&Cyclotomic::one()).abs_square_rational().unwrap();
        assert_eq!(v, <Rational as Ring>::one());
        // |zeta^3 - 1|^2 = 4
        let v = z.pow(3).sub(&Cyclotomic::one()).abs_square_rational().unwrap();
        assert_eq!(v, Rational::from(BigInt::from(4)));
        // |0|^2 = 0
        assert_eq!(
            Cyclotomic::zero().abs_square_rational().unwrap(),
            <Rational as Ring>::zero()
        );
    }

    #[test]
    fn inverse() {
        let z = Cyclotomic::zeta(5);
        let v = z.add(&Cyclotomic::from_int(2));
        let prod = v.mul(&v.inv());
        assert!(Ring::is_one(&prod));
    }

    #[test]
    fn zeta_minus_one_4th_power_is_zeta_squared() {
        // (zeta-1)^4 = zeta^2 in Q(zeta_6) since zeta-1 = zeta^2
        let z = Cyclotomic::zeta(6);
        let v = z.sub(&Cyclotomic::one()).pow(4);
        assert_eq!(v, z.pow(2));
        assert_eq!(z.sub(&Cyclotomic::one()), z.pow(2));
    }
}
