//! Dehn surgery: the gluing formula, evaluation of knot-exterior torsion
//! at a root of unity, and the surgery formula computing the torsion set
//! of the surgered manifold from the knot-level invariant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{
    smith_normal_form, Cyclotomic, Field, Matrix, Rational, Ring, TorsionScalar, TorsionValue,
    UnitGroupSpec,
};
use crate::error::{Error, Result};
use crate::groups::{FinitePresentation, GroupWord, Perm, PermGroup};
use crate::knot::{
    knot_surjections, peripheral_class, presentation_torsion, MarkedPresentation, Representation,
};

/// A surgery slope p/q with chosen companions r, s satisfying
/// ps - qr = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgerySlope {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

/// Normalize to p >= 0 and pick the canonical companion pair with
/// 0 <= r < p when p > 0.
pub fn slope(p: i64, q: i64) -> Result<SurgerySlope> {
    if p == 0 && q == 0 {
        return Err(Error::Invalid("slope 0/0".into()));
    }
    let (mut p, mut q) = (p, q);
    if p < 0 {
        p = -p;
        q = -q;
    }
    let g = gcd(p.unsigned_abs(), q.unsigned_abs());
    if g != 1 {
        return Err(Error::Invalid(format!("slope {p}/{q} is not irreducible")));
    }
    // extended Euclid for p*s - q*r = 1
    let (mut r, mut s);
    if p == 0 {
        // q = +-1; 0*s - q*r = 1 => r = -1/q
        r = -q.signum();
        s = 0;
    } else {
        // find s, r with p*s + q*(-r) = 1
        let (x, y) = ext_gcd(p, q);
        // p*x + q*y = 1 -> s = x, r = -y
        s = x;
        r = -y;
        // canonical representative: 0 <= r < p, shifting (r, s) by (p, q)
        let k = r.div_euclid(p);
        r -= k * p;
        s -= k * q;
    }
    Ok(SurgerySlope { p, q, r, s })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Returns (x, y) with a*x + b*y = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    if b == 0 {
        (a.signum(), 0)
    } else {
        let (x, y) = ext_gcd(b, a.rem_euclid(b));
        (y, x - (a.div_euclid(b)) * y)
    }
}

/// Surjective character beta onto the cyclic group of p-th roots of
/// unity; the knot-case normalization sends the meridian class to zeta.
#[derive(Clone, Copy, Debug)]
pub struct CharacterBeta {
    pub order: u32,
}

/// Solve the gluing formula for the filled manifold:
/// tau(M) = tau(E) / det(rho(core) - I).
pub fn glue_torsion(tau_e: &TorsionValue, core_det: &Cyclotomic) -> Result<TorsionValue> {
    if core_det.is_zero() {
        return Err(Error::Hypothesis(
            "core determinant vanishes: filled complex is not acyclic".into(),
        ));
    }
    Ok(tau_e.scalar_div(core_det).canonicalize())
}

/// Substitute t = zeta_p^k into a rational-function torsion value and
/// canonicalize over the scalar unit group (sign, zeta, det-image).
pub fn evaluate_at_root(tau: &TorsionValue, p: u32, k: i64) -> Result<TorsionValue> {
    let root_gens: Vec<Cyclotomic> = tau
        .units()
        .root_units()
        .iter()
        .filter(|u| !u.is_one())
        .cloned()
        .collect();
    let units = UnitGroupSpec::scalar_side(p, &root_gens);
    let zeta = Cyclotomic::zeta(p);
    match tau.value() {
        TorsionScalar::Scalar(_) => Err(Error::Invalid("expected a t-valued torsion".into())),
        TorsionScalar::Fraction(f) => {
            if f.is_zero() {
                return Ok(TorsionValue::zero_scalar(units));
            }
            let num = f.numer().eval_root(&zeta, k);
            let den = f.denom().eval_root(&zeta, k);
            if den.is_zero() {
                return Err(Error::Hypothesis(
                    "evaluation undefined: denominator vanishes at the root".into(),
                ));
            }
            let v = num.mul(&den.inv());
            Ok(TorsionValue::scalar(v, units).canonicalize())
        }
    }
}

/// det(zeta^k * phi(x) - I) over Q(zeta_p).
pub fn twist_det(phi: &Representation, x: &Perm, p: u32, k: i64) -> Result<Cyclotomic> {
    let zeta = Cyclotomic::zeta(p).pow(k);
    let m = phi.of(x)?;
    let n = m.rows();
    let scaled = m.map(|q| Cyclotomic::from_rational(q.clone()).mul(&zeta));
    scaled.sub(&Matrix::identity(n)).det()
}

/// Presentation of the surgered manifold: the knot group plus the
/// filling relator mu^p * lambda^q.
pub fn surgered_presentation(knot: &MarkedPresentation, sl: &SurgerySlope) -> FinitePresentation {
    let mut relators = knot.pres.relators.clone();
    let mut fill: GroupWord = vec![(knot.meridian, sl.p)];
    if sl.q != 0 {
        let lam = &knot.longitude;
        for _ in 0..sl.q.unsigned_abs() {
            if sl.q > 0 {
                fill.extend(lam.iter().cloned());
            } else {
                fill.extend(lam.iter().rev().map(|&(g, e)| (g, -e)));
            }
        }
    }
    relators.push(fill);
    FinitePresentation::new(knot.pres.gens.clone(), relators).expect("generators unchanged")
}

/// Invariant factors > 1 and free rank of H1 of a presentation.
pub fn abelianization(p: &FinitePresentation) -> (Vec<BigInt>, usize) {
    let rows = p.relators.len();
    let cols = p.gens.len();
    let mut m = vec![vec![BigInt::zero(); cols]; rows];
    for (i, r) in p.relators.iter().enumerate() {
        for &(g, e) in r {
            m[i][g] += BigInt::from(e);
        }
    }
    let snf = smith_normal_form(&m);
    let nonzero = snf.diag.iter().filter(|d| !d.is_zero()).count();
    (snf.torsion_factors(), cols - nonzero)
}

/// One element of a manifold torsion set, with its provenance.
#[derive(Clone, Debug)]
pub struct ManifoldTorsion {
    /// Orbit representative of the contributing peripheral (or Seifert)
    /// class.
    pub class: Vec<Perm>,
    pub value: TorsionValue,
}

#[derive(Clone, Debug, Default)]
pub struct ManifoldInvariantSet {
    pub elements: Vec<ManifoldTorsion>,
    pub warnings: Vec<String>,
}

impl ManifoldInvariantSet {
    /// Deduplicated canonical values.
    pub fn values(&self) -> Vec<TorsionValue> {
        let mut out: Vec<TorsionValue> = vec![];
        for e in &self.elements {
            if !out.contains(&e.value) {
                out.push(e.value.clone());
            }
        }
        out
    }
}

/// T_{K(p/q), beta}^phi by the surgery formula: for every knot-level
/// class [g,h] = [rho(lambda), rho(mu)] with g^q h^p = 1,
/// tau|_{t=zeta} / det(zeta^r phi(g^s h^r) - I).
pub fn surgery_invariant_set(
    knot: &MarkedPresentation,
    sl: &SurgerySlope,
    g: &PermGroup,
    phi: &Representation,
    beta: &CharacterBeta,
) -> Result<ManifoldInvariantSet> {
    let p = beta.order;
    let knot_units = UnitGroupSpec::knot_side(&phi.det_root_units()?);
    let mut out = ManifoldInvariantSet::default();
    for h in knot_surjections(knot, g) {
        let lam = h.eval(&knot.longitude, g.degree());
        let mu = h.images[knot.meridian].clone();
        // surgery relation: g^q h^p = 1
        if !lam.pow(sl.q).mul(&mu.pow(sl.p)).is_identity() {
            continue;
        }
        let class = peripheral_class(knot, &h, g);
        // theorem hypotheses
        let d_mu = twist_det(phi, &mu, p, 1)?;
        if d_mu.is_zero() {
            return Err(Error::Hypothesis(format!(
                "det(zeta phi(h) - I) = 0 for class [{}, {}]",
                class[0], class[1]
            )));
        }
        let core = lam.pow(sl.s).mul(&mu.pow(sl.r));
        let d_core = twist_det(phi, &core, p, sl.r)?;
        if d_core.is_zero() {
            return Err(Error::Hypothesis(format!(
                "det(zeta^r phi(g^s h^r) - I) = 0 for class [{}, {}]",
                class[0], class[1]
            )));
        }
        let mats: Vec<Matrix<Rational>> = h
            .images
            .iter()
            .map(|x| phi.of(x).cloned())
            .collect::<Result<_>>()?;
        let drop = knot.pres.relators.len().checked_sub(1);
        let tau_k = presentation_torsion(knot, &mats, drop, knot.meridian, &knot_units)?;
        if tau_k.is_zero() {
            out.warnings.push(format!(
                "skipped class [{}, {}]: knot-level torsion vanishes",
                class[0], class[1]
            ));
            continue;
        }
        let at_root = evaluate_at_root(&tau_k, p, 1)?;
        let value = match at_root.value() {
            TorsionScalar::Scalar(z) => {
                TorsionValue::scalar(z.mul(&d_core.inv()), at_root.units().clone()).canonicalize()
            }
            _ => unreachable!("evaluate_at_root returns a scalar"),
        };
        out.elements.push(ManifoldTorsion { class, value });
    }
    Ok(out)
}

impl SurgerySlope {
    /// Shift the companion pair: (r, s) -> (r + kp, s + kq) is also
    /// valid; used by invariance tests.
    pub fn shifted(&self, k: i64) -> SurgerySlope {
        SurgerySlope {
            p: self.p,
            q: self.q,
            r: self.r + k * self.p,
            s: self.s + k * self.q,
        }
    }
}

#[allow(dead_code)]
fn bigint_abs(x: &BigInt) -> BigInt {
    x.abs()
}

#[allow(dead_code)]
fn is_unit(x: &BigInt) -> bool {
    x.abs() == BigInt::from(1)
}

#[allow(dead_code)]
fn divides(a: &BigInt, b: &BigInt) -> bool {
    !a.is_zero() && b.mod_floor(a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;
    use crate::knot::{wirtinger, PDCode};

    #[test]
    fn slope_examples() {
        let s = slope(6, 1).unwrap();
        assert_eq!((s.p, s.q, s.r, s.s), (6, 1, 5, 1));
        assert_eq!(s.p * s.s - s.q * s.r, 1);
        let s = slope(0, 1).unwrap();
        assert_eq!((s.r, s.s), (-1, 0));
        assert_eq!(s.p * s.s - s.q * s.r, 1);
        let s = slope(3, 2).unwrap();
        assert_eq!((s.r, s.s), (1, 1));
        assert!(slope(4, 2).is_err());
        // negative p normalizes
        let s = slope(-3, 5).unwrap();
        assert_eq!((s.p, s.q), (3, -5));
        assert_eq!(s.p * s.s - s.q * s.r, 1);
        assert!(s.r >= 0 && s.r < 3);
    }

    #[test]
    fn glue_examples() {
        let z = Cyclotomic::zeta(5);
        let units = UnitGroupSpec::scalar_side(5, &[]);
        let one = TorsionValue::scalar(Cyclotomic::one(), units.clone());
        assert!(glue_torsion(&one, &Cyclotomic::zero()).is_err());
        let glued = glue_torsion(&one, &z.sub(&Cyclotomic::one())).unwrap();
        let expect = TorsionValue::scalar(z.sub(&Cyclotomic::one()).inv(), units);
        assert_eq!(glued, expect);
    }

    #[test]
    fn evaluate_examples() {
        let units = UnitGroupSpec::knot_side(&[]);
        // (t^2 - t + 1)/(t - 1) at zeta_6 -> 0 (Phi_6 divides numerator)
        let num = LaurentPoly::from_terms(vec![
            (0, Cyclotomic::from_int(1)),
            (1, Cyclotomic::from_int(-1)),
            (2, Cyclotomic::from_int(1)),
        ]);
        let den = LaurentPoly::t().sub(&LaurentPoly::one());
        let tau = TorsionValue::fraction(
            crate::algebra::LaurentRational::new(num, den.clone()),
            units.clone(),
        );
        let v = evaluate_at_root(&tau, 6, 1).unwrap();
        assert!(v.is_zero());
        // [1] -> [1]
        let one = TorsionValue::fraction(
            crate::algebra::LaurentRational::from_poly(LaurentPoly::one()),
            units.clone(),
        );
        assert!(!evaluate_at_root(&one, 6, 1).unwrap().is_zero());
        // 1/(t - 1) is defined at zeta_5
        let tau = TorsionValue::fraction(
            crate::algebra::LaurentRational::new(LaurentPoly::one(), den),
            units,
        );
        let v = evaluate_at_root(&tau, 5, 1).unwrap();
        assert!(!v.is_zero());
    }

    fn unknot_presentation() -> MarkedPresentation {
        MarkedPresentation {
            pres: FinitePresentation::new(vec!["a".into()], vec![]).unwrap(),
            meridian: 0,
            longitude: vec![],
        }
    }

    #[test]
    fn unknot_surgery_is_lens_space_torsion() {
        let knot = unknot_presentation();
        let sl = slope(5, 1).unwrap();
        let g = PermGroup::trivial(1);
        let phi = Representation::trivial(&g, 1);
        let set =
            surgery_invariant_set(&knot, &sl, &g, &phi, &CharacterBeta { order: 5 }).unwrap();
        assert_eq!(set.elements.len(), 1);
        let z = Cyclotomic::zeta(5);
        let zm1 = z.sub(&Cyclotomic::one());
        let zr1 = z.pow(sl.r).sub(&Cyclotomic::one());
        let units = UnitGroupSpec::scalar_side(5, &[]);
        let expect =
            TorsionValue::scalar(zm1.mul(&zr1).inv(), units);
        assert_eq!(set.elements[0].value, expect);
    }

    #[test]
    fn unknot_surgery_rs_invariance() {
        let knot = unknot_presentation();
        let g = PermGroup::trivial(1);
        let phi = Representation::trivial(&g, 1);
        let sl = slope(7, 2).unwrap();
        let base = surgery_invariant_set(&knot, &sl, &g, &phi, &CharacterBeta { order: 7 })
            .unwrap()
            .values();
        for k in -2..=2 {
            let shifted = sl.shifted(k);
            assert_eq!(shifted.p * shifted.s - shifted.q * shifted.r, 1);
            let vals =
                surgery_invariant_set(&knot, &shifted, &g, &phi, &CharacterBeta { order: 7 })
                    .unwrap()
                    .values();
            assert_eq!(vals, base);
        }
    }

    #[test]
    fn surgered_presentation_homology() {
        let knot = unknot_presentation();
        let p = surgered_presentation(&knot, &slope(5, 1).unwrap());
        let (tors, rank) = abelianization(&p);
        assert_eq!(rank, 0);
        assert_eq!(tors, vec![BigInt::from(5)]);
        // 0/1-surgery on the trefoil: H1 = Z
        let t = wirtinger(&PDCode::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap());
        let p = surgered_presentation(&t, &slope(0, 1).unwrap());
        let (tors, rank) = abelianization(&p);
        assert_eq!(rank, 1);
        assert!(tors.is_empty());
    }
}
