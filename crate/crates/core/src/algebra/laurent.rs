//! Laurent polynomials in `t` over a cyclotomic field, and their fraction
//! field. No zero coefficients are ever stored.

use std::collections::BTreeMap;

use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use super::{Field, IntegralDomain, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    // exponent -> nonzero coefficient
    terms: BTreeMap<i64, Cyclotomic>,
}

impl LaurentPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Cyclotomic)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            let cur = map.remove(&e).unwrap_or_else(Cyclotomic::zero).add(&c);
            if !Ring::is_zero(&cur) {
                map.insert(e, cur);
            }
        }
        LaurentPoly { terms: map }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Cyclotomic::from_int(n))
    }

    /// `c * t^e`
    pub fn monomial(e: i64, c: Cyclotomic) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn t() -> Self {
        Self::monomial(1, Cyclotomic::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> Cyclotomic {
        self.terms.get(&e).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Cyclotomic> {
        self.terms.values().next_back()
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if Ring::is_zero(c) {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `t -> z^k` for a scalar z; exact evaluation.
    pub fn eval_root(&self, z: &Cyclotomic, k: i64) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&c.mul(&z.pow(e * k)));
        }
        acc
    }

    /// Substitute `t -> r` for a rational r (used by tests/oracles).
    pub fn eval_rational(&self, r: &Rational) -> Cyclotomic {
        self.eval_root(&Cyclotomic::from_rational(r.clone()), 1)
    }

    /// Polynomial pseudo-structure: ordinary polynomial with min exp 0.
    fn as_poly(&self) -> (i64, Vec<Cyclotomic>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![Cyclotomic::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, vec![]),
        }
    }

    fn from_poly(lo: i64, v: Vec<Cyclotomic>) -> Self {
        Self::from_terms(
            v.into_iter()
                .enumerate()
                .map(|(i, c)| (lo + i as i64, c)),
        )
    }

    /// Long division over the coefficient field; returns (quot, rem),
    /// ignoring t-units (computes on shifted ordinary polynomials).
    fn divmod_poly(a: &[Cyclotomic], b: &[Cyclotomic]) -> (Vec<Cyclotomic>, Vec<Cyclotomic>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() <= db {
            return (vec![], rem);
        }
        let mut quot = vec![Cyclotomic::zero(); rem.len() - db];
        while rem.len() > db {
            let dr = rem.len() - 1;
            let q = rem[dr].exact_div(&lead);
            quot[dr - db] = q.clone();
            for j in 0..=db {
                rem[dr - db + j] = rem[dr - db + j].sub(&q.mul(&b[j]));
            }
            rem.pop();
            trim(&mut rem);
        }
        (quot, rem)
    }

    /// Monic gcd (as an ordinary polynomial in t; t-power content ignored).
    pub fn gcd(&self, other: &Self) -> Self {
        if Ring::is_zero(self) {
            return other.normalized_monic();
        }
        if Ring::is_zero(other) {
            return self.normalized_monic();
        }
        let (_, mut a) = self.as_poly();
        let (_, mut b) = other.as_poly();
        while !b.is_empty() {
            let (_, r) = Self::divmod_poly(&a, &b);
            a = b;
            b = r;
        }
        LaurentPoly::from_poly(0, a).normalized_monic()
    }

    /// Divide out `t^min_exp` and the leading coefficient.
    fn normalized_monic(&self) -> Self {
        if Ring::is_zero(self) {
            return Self::zero();
        }
        let lo = self.min_exp().unwrap();
        let lead = self.leading_coeff().unwrap().inv();
        self.shift(-lo).scale(&lead)
    }
}

fn trim(v: &mut Vec<Cyclotomic>) {
    while v.last().map_or(false, |c| Ring::is_zero(c)) {
        v.pop();
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let cur = terms.remove(e).unwrap_or_else(Cyclotomic::zero).add(c);
            if !Ring::is_zero(&cur) {
                terms.insert(*e, cur);
            }
        }
        LaurentPoly { terms }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, Cyclotomic> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                let add = c1.mul(c2);
                let cur = terms.remove(&e).unwrap_or_else(Cyclotomic::zero).add(&add);
                if !Ring::is_zero(&cur) {
                    terms.insert(e, cur);
                }
            }
        }
        LaurentPoly { terms }
    }

    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl IntegralDomain for LaurentPoly {
    /// Exact division; panics on nonzero remainder (Bareiss pivots only).
    fn exact_div(&self, other: &Self) -> Self {
        assert!(!Ring::is_zero(other), "division by zero polynomial");
        if Ring::is_zero(self) {
            return Self::zero();
        }
        let (la, a) = self.as_poly();
        let (lb, b) = other.as_poly();
        let (q, r) = Self::divmod_poly(&a, &b);
        assert!(r.is_empty(), "non-exact Laurent division");
        LaurentPoly::from_poly(la - lb, q)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for (e, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let coeff = if cs.contains('+') || cs.contains('-') && cs.len() > 1 && !cs.starts_with('-')
            {
                format!("({cs})")
            } else if cs.contains('z') && (cs.contains('+') || cs.contains('-')) {
                format!("({cs})")
            } else {
                cs
            };
            let term = match *e {
                0 => coeff,
                1 if coeff == "1" => "t".into(),
                1 if coeff == "-1" => "-t".into(),
                1 => format!("{coeff}*t"),
                _ if coeff == "1" => format!("t^{e}"),
                _ if coeff == "-1" => format!("-t^{e}"),
                _ => format!("{coeff}*t^{e}"),
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Element of the fraction field `Q(zeta)(t)`, stored with the denominator
/// gcd-reduced, min exponent 0 and monic leading coefficient, so equal
/// values have identical representations.
#[derive(Clone, Debug)]
pub struct LaurentRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRational {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!Ring::is_zero(&den), "zero denominator");
        Self::reduce(num, den)
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        LaurentRational { num, den: LaurentPoly::one() }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if Ring::is_zero(&num) {
            return LaurentRational { num, den: LaurentPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.max_exp() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        // normalize: denominator min exp 0, monic; fold units into num
        let dlo = den.min_exp().unwrap();
        let dlead = den.leading_coeff().unwrap().clone();
        let den = den.shift(-dlo).scale(&dlead.inv());
        let num = num.shift(-dlo).scale(&dlead.inv());
        LaurentRational { num, den }
    }

    pub fn is_polynomial(&self) -> bool {
        Ring::is_one(&self.den)
    }

    /// Substitute `t -> z^k`; error when the denominator vanishes there.
    pub fn eval_root(&self, z: &Cyclotomic, k: i64) -> Option<Cyclotomic> {
        let d = self.den.eval_root(z, k);
        if Ring::is_zero(&d) {
            return None;
        }
        Some(self.num.eval_root(z, k).exact_div(&d))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }
}

impl PartialEq for LaurentRational {
    /// Cross-multiplication equality.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for LaurentRational {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn neg(&self) -> Self {
        LaurentRational { num: self.num.neg(), den: self.den.clone() }
    }

    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.num)
    }
}

impl IntegralDomain for LaurentRational {
    fn exact_div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Field for LaurentRational {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "division by zero");
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl std::fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::t()
    }

    #[test]
    fn arithmetic() {
        // (t - 1)(t + 1) = t^2 - 1
        let a = t().sub(&LaurentPoly::one());
        let b = t().add(&LaurentPoly::one());
        let p = a.mul(&b);
        let expect = LaurentPoly::from_terms([
            (2, Cyclotomic::one()),
            (0, Cyclotomic::from_int(-1)),
        ]);
        assert_eq!(p, expect);
        assert_eq!(p.exact_div(&a), b);
    }

    #[test]
    fn negative_exponents() {
        let a = LaurentPoly::monomial(-2, Cyclotomic::from_int(3));
        let b = LaurentPoly::monomial(2, Cyclotomic::one());
        assert_eq!(a.mul(&b), LaurentPoly::from_int(3));
    }

    #[test]
    fn fraction_reduction() {
        // (t^2-1)/(t-1) reduces to t+1
        let num = t().mul(&t()).sub(&LaurentPoly::one());
        let den = t().sub(&LaurentPoly::one());
        let r = LaurentRational::new(num, den);
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &t().add(&LaurentPoly::one()));
    }

    #[test]
    fn eval_at_root() {
        // (t^2-t+1) at t=zeta_6 is 0
        let p = LaurentPoly::from_terms([
            (2, Cyclotomic::one()),
            (1, Cyclotomic::from_int(-1)),
            (0, Cyclotomic::one()),
        ]);
        let z = Cyclotomic::zeta(6);
        assert!(Ring::is_zero(&p.eval_root(&z, 1)));
    }

    #[test]
    fn fraction_field_axioms() {
        let x = LaurentRational::new(
            t().add(&LaurentPoly::from_int(2)),
            t().sub(&LaurentPoly::one()),
        );
        assert!(Ring::is_one(&x.mul(&x.inv())));
        assert!(Ring::is_zero(&x.sub(&x)));
    }
}
