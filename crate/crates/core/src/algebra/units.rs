//! Torsion values: field elements considered up to a declared group of
//! units (sign, powers of t, roots of unity coming from `det o rho`),
//! with a decidable canonical form.

use std::cmp::Ordering;

use super::cyclotomic::Cyclotomic;
use super::laurent::{LaurentPoly, LaurentRational};
use super::{Field, Ring};

/// The declared unit group: `(+-1) * t^Z * <root units>`, each factor
/// switchable. `root_units` is always a finite group of roots of unity,
/// stored closed under product and inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitGroupSpec {
    sign: bool,
    t_shift: bool,
    root_units: Vec<Cyclotomic>,
}

impl UnitGroupSpec {
    /// Close the generated subgroup; generators must be roots of unity.
    pub fn generate(sign: bool, t_shift: bool, gens: &[Cyclotomic]) -> Self {
        let mut elems = vec![Cyclotomic::one()];
        let mut frontier = vec![Cyclotomic::one()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if !elems.contains(&y) {
                    assert!(
                        elems.len() < 4096,
                        "unit generators do not generate a finite group"
                    );
                    elems.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        // inverses are powers in a finite cyclic-times-sign group, so the
        // closure above is already inverse-closed
        UnitGroupSpec { sign, t_shift, root_units: elems }
    }

    pub fn trivial() -> Self {
        Self::generate(false, false, &[])
    }

    /// Units for torsion of a knot exterior twisted by `alpha (x) phi rho`:
    /// sign, all powers of t, and the scalar root units.
    pub fn knot_side(root_gens: &[Cyclotomic]) -> Self {
        Self::generate(true, true, root_gens)
    }

    /// Units for a closed-manifold torsion value in `Q(zeta_p)`:
    /// sign, powers of zeta and the image of `det o phi`.
    pub fn scalar_side(p: u32, root_gens: &[Cyclotomic]) -> Self {
        let mut gens = vec![Cyclotomic::zeta(p)];
        gens.extend_from_slice(root_gens);
        Self::generate(true, false, &gens)
    }

    pub fn root_units(&self) -> &[Cyclotomic] {
        &self.root_units
    }

    pub fn allows_sign(&self) -> bool {
        self.sign
    }

    pub fn allows_t_shift(&self) -> bool {
        self.t_shift
    }

    /// All scalar units (sign x root units).
    fn scalar_units(&self) -> Vec<Cyclotomic> {
        let mut out = self.root_units.clone();
        if self.sign {
            let negs: Vec<Cyclotomic> =
                out.iter().map(|u| u.neg()).filter(|u| !out.contains(u)).collect();
            out.extend(negs);
        }
        out
    }
}

/// A torsion value: either a scalar in `Q(zeta)` or an element of the
/// fraction field `Q(zeta)(t)`, taken modulo `units`.
#[derive(Clone, Debug)]
pub enum TorsionScalar {
    Scalar(Cyclotomic),
    Fraction(LaurentRational),
}

#[derive(Clone, Debug)]
pub struct TorsionValue {
    value: TorsionScalar,
    units: UnitGroupSpec,
    canonical: bool,
}

impl TorsionValue {
    pub fn scalar(value: Cyclotomic, units: UnitGroupSpec) -> Self {
        TorsionValue { value: TorsionScalar::Scalar(value), units, canonical: false }
    }

    pub fn fraction(value: LaurentRational, units: UnitGroupSpec) -> Self {
        TorsionValue { value: TorsionScalar::Fraction(value), units, canonical: false }
    }

    pub fn zero_scalar(units: UnitGroupSpec) -> Self {
        Self::scalar(Cyclotomic::zero(), units)
    }

    pub fn value(&self) -> &TorsionScalar {
        &self.value
    }

    pub fn units(&self) -> &UnitGroupSpec {
        &self.units
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            TorsionScalar::Scalar(z) => z.is_zero(),
            TorsionScalar::Fraction(r) => r.is_zero(),
        }
    }

    /// Orbit-minimal representative: normalize the t-valuation away when
    /// t-shifts are allowed, then take the minimum of the finite residual
    /// orbit under the deterministic lexicographic order. Idempotent.
    pub fn canonicalize(&self) -> TorsionValue {
        if self.canonical {
            return self.clone();
        }
        let value = match &self.value {
            TorsionScalar::Scalar(z) => {
                TorsionScalar::Scalar(canonical_scalar(z, &self.units))
            }
            TorsionScalar::Fraction(r) => {
                if r.is_zero() {
                    TorsionScalar::Fraction(LaurentRational::zero())
                } else {
                    let mut num = r.numer().clone();
                    let den = r.denom().clone();
                    if self.units.allows_t_shift() {
                        num = num.shift(-num.min_exp().unwrap());
                    }
                    let best = self
                        .units
                        .scalar_units()
                        .iter()
                        .map(|u| num.scale(u))
                        .min_by(|a, b| poly_lex_cmp(a, b))
                        .unwrap();
                    TorsionScalar::Fraction(LaurentRational::new(best, den))
                }
            }
        };
        TorsionValue { value, units: self.units.clone(), canonical: true }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Multiply by a scalar (stays in the same unit class family).
    pub fn scale(&self, c: &Cyclotomic) -> TorsionValue {
        let value = match &self.value {
            TorsionScalar::Scalar(z) => TorsionScalar::Scalar(z.mul(c)),
            TorsionScalar::Fraction(r) => TorsionScalar::Fraction(
                r.mul_poly(&LaurentPoly::constant(c.clone())),
            ),
        };
        TorsionValue { value, units: self.units.clone(), canonical: false }
    }

    /// Divide a scalar-valued torsion by a scalar.
    pub fn scalar_div(&self, c: &Cyclotomic) -> TorsionValue {
        self.scale(&c.inv())
    }
}

impl PartialEq for TorsionValue {
    /// Equality of unit classes: identical canonical forms.
    fn eq(&self, other: &Self) -> bool {
        if self.units != other.units {
            return false;
        }
        let a = self.canonicalize();
        let b = other.canonicalize();
        match (&a.value, &b.value) {
            (TorsionScalar::Scalar(x), TorsionScalar::Scalar(y)) => x == y,
            (TorsionScalar::Fraction(x), TorsionScalar::Fraction(y)) => x == y,
            _ => false,
        }
    }
}

fn canonical_scalar(z: &Cyclotomic, units: &UnitGroupSpec) -> Cyclotomic {
    if z.is_zero() {
        return Cyclotomic::zero();
    }
    units
        .scalar_units()
        .iter()
        .map(|u| z.mul(u))
        .min_by(Cyclotomic::lex_cmp)
        .unwrap()
}

/// Total order on Laurent polynomials: compare coefficient at each
/// exponent in increasing order (absent = zero), coefficients by the
/// cyclotomic lexicographic order.
fn poly_lex_cmp(a: &LaurentPoly, b: &LaurentPoly) -> Ordering {
    let lo = match (a.min_exp(), b.min_exp()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => return Ordering::Equal,
    };
    let hi = a.max_exp().unwrap_or(lo).max(b.max_exp().unwrap_or(lo));
    for e in lo..=hi {
        match a.coeff(e).lex_cmp(&b.coeff(e)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

impl std::fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.value {
            TorsionScalar::Scalar(z) => write!(f, "[{z}]"),
            TorsionScalar::Fraction(r) => write!(f, "[{r}]"),
        }
    }
}

/// Free-function form of [`TorsionValue::canonicalize`].
pub fn canonicalize(v: &TorsionValue) -> TorsionValue {
    v.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::Rational;

    fn units_pm_t() -> UnitGroupSpec {
        UnitGroupSpec::generate(true, true, &[])
    }

    #[test]
    fn strip_sign_and_t_power() {
        // -t^3 * 29 canonicalizes to 29 under {+-1, t^k}
        let v = LaurentPoly::monomial(3, Cyclotomic::from_int(-29));
        let tv = TorsionValue::fraction(LaurentRational::from_poly(v), units_pm_t());
        let c = tv.canonicalize();
        match c.value() {
            TorsionScalar::Fraction(r) => {
                assert_eq!(r.numer(), &LaurentPoly::from_int(29));
                assert!(r.is_polynomial());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn zeta_orbit_of_rational() {
        // zeta^4 * 5 under {+-zeta^j} canonicalizes like 5 itself
        let z = Cyclotomic::zeta(6);
        let units = UnitGroupSpec::scalar_side(6, &[]);
        let a = TorsionValue::scalar(z.pow(4).mul(&Cyclotomic::from_int(5)), units.clone());
        let b = TorsionValue::scalar(Cyclotomic::from_int(5), units);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_is_its_own_class() {
        let units = UnitGroupSpec::scalar_side(6, &[]);
        let v = TorsionValue::zero_scalar(units).canonicalize();
        assert!(v.is_zero());
    }

    #[test]
    fn canonicalize_idempotent_and_unit_invariant() {
        let z = Cyclotomic::zeta(6);
        let units = UnitGroupSpec::scalar_side(6, &[]);
        let x = z.pow(2).add(&Cyclotomic::from_rational(Rational::new(
            3.into(),
            2.into(),
        )));
        let v = TorsionValue::scalar(x.clone(), units.clone());
        let c1 = v.canonicalize();
        let c2 = c1.canonicalize();
        assert!(c1 == c2);
        for u in units.scalar_units() {
            let w = TorsionValue::scalar(x.mul(&u), units.clone());
            assert_eq!(w, v);
        }
    }
}
