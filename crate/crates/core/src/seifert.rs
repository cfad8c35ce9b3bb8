//! Seifert fibered spaces over S^2: presentations, enumeration of the
//! finite-group invariant S_G, the closed-form torsion of a Seifert
//! manifold twisted through a finite group, and the obstruction search
//! comparing a surgered knot exterior against candidate Seifert
//! manifolds.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{
    Cyclotomic, Field, Matrix, Rational, Ring, TorsionValue, UnitGroupSpec,
};
use crate::error::{Error, Result};
use crate::groups::{FinitePresentation, GroupWord, Perm, PermGroup};
use crate::knot::{knot_surjections, MarkedPresentation, Representation};
use crate::surgery::{
    abelianization, surgery_invariant_set, twist_det, CharacterBeta, ManifoldInvariantSet,
    ManifoldTorsion, SurgerySlope, SurgerySlope as Fiber,
};

/// Multiplicities of the exceptional fibers of a Seifert manifold over
/// S^2, as irreducible fractions p_i/q_i with companion pairs (r_i, s_i)
/// satisfying p_i s_i - q_i r_i = 1. Normalized so p_i >= 2 (a fraction
/// with p_i < 0 flips the sign of both entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertParams {
    fibers: Vec<Fiber>,
}

impl SeifertParams {
    pub fn new(fractions: &[(i64, i64)]) -> Result<Self> {
        if fractions.len() < 2 {
            return Err(Error::Invalid("at least two exceptional fibers required".into()));
        }
        let mut fibers = vec![];
        for &(p, q) in fractions {
            let f = crate::surgery::slope(p, q)?;
            if f.p < 2 {
                return Err(Error::Invalid(format!(
                    "fiber multiplicity {p}/{q} must have |p| >= 2"
                )));
            }
            fibers.push(f);
        }
        Ok(SeifertParams { fibers })
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn m(&self) -> usize {
        self.fibers.len()
    }

    /// Fractions as normalized (p_i, q_i) pairs.
    pub fn fractions(&self) -> Vec<(i64, i64)> {
        self.fibers.iter().map(|f| (f.p, f.q)).collect()
    }

    /// Replace the i-th companion pair by (r + kp, s + kq); invariance
    /// of every downstream value under this is a correctness check.
    pub fn shifted(&self, i: usize, k: i64) -> SeifertParams {
        let mut fibers = self.fibers.clone();
        fibers[i] = fibers[i].shifted(k);
        SeifertParams { fibers }
    }
}

/// `<x, y_1, .., y_m | y_1..y_m, [x, y_i], x^{q_i} y_i^{p_i}>`:
/// x is the central fiber class, y_i the exceptional fiber meridians.
pub fn seifert_presentation(params: &SeifertParams) -> FinitePresentation {
    let m = params.m();
    let mut gens = vec!["x".to_string()];
    gens.extend((1..=m).map(|i| format!("y{i}")));
    let mut relators: Vec<GroupWord> = vec![(1..=m).map(|i| (i, 1)).collect()];
    for i in 1..=m {
        relators.push(vec![(0, 1), (i, 1), (0, -1), (i, -1)]);
    }
    for (i, f) in params.fibers.iter().enumerate() {
        relators.push(vec![(0, f.q), (i + 1, f.p)]);
    }
    FinitePresentation::new(gens, relators).expect("relators use declared generators")
}

/// |H_1| by the closed form |sum_i q_i prod_{j != i} p_j|; 0 means
/// infinite. Agrees with the Smith-normal-form order of the
/// abelianized presentation.
pub fn homology_order(params: &SeifertParams) -> i64 {
    let mut total: i64 = 0;
    for i in 0..params.m() {
        let mut term = params.fibers[i].q;
        for (j, f) in params.fibers.iter().enumerate() {
            if j != i {
                term *= f.p;
            }
        }
        total += term;
    }
    total.abs()
}

/// A conjugacy class of tuples [g, h_1, .., h_m]: g central,
/// h_1..h_m = 1, g^{q_i} h_i^{p_i} = 1, and the tuple generates G.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SGClass {
    pub g: Perm,
    pub h: Vec<Perm>,
}

impl SGClass {
    /// The full tuple, as stored in torsion-set provenance.
    pub fn tuple(&self) -> Vec<Perm> {
        let mut out = vec![self.g.clone()];
        out.extend(self.h.iter().cloned());
        out
    }
}

/// Brute-force enumeration of S_G: g over the center, h_i over the
/// solutions of g^{q_i} h_i^{p_i} = 1 with h_m determined by the product
/// relation, filtered by generation and quotiented by simultaneous
/// conjugation.
pub fn enumerate_sg(params: &SeifertParams, g: &PermGroup) -> Vec<SGClass> {
    let m = params.m();
    let mut found: std::collections::BTreeSet<Vec<Perm>> = Default::default();
    for z in g.center() {
        let candidates: Vec<Vec<Perm>> = params
            .fibers
            .iter()
            .map(|f| {
                let zq = z.pow(f.q);
                g.elements()
                    .iter()
                    .filter(|h| zq.mul(&h.pow(f.p)).is_identity())
                    .cloned()
                    .collect()
            })
            .collect();
        let mut stack: Vec<Vec<Perm>> = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if partial.len() == m - 1 {
                let mut prod = Perm::identity(g.degree());
                for h in &partial {
                    prod = prod.mul(h);
                }
                let last = prod.inv();
                if !candidates[m - 1].contains(&last) {
                    continue;
                }
                let mut tuple = vec![z.clone()];
                tuple.extend(partial.iter().cloned());
                tuple.push(last);
                if g.generates(&tuple) {
                    found.insert(g.orbit_representative(&tuple));
                }
            } else {
                for h in &candidates[partial.len()] {
                    let mut next = partial.clone();
                    next.push(h.clone());
                    stack.push(next);
                }
            }
        }
    }
    found
        .into_iter()
        .map(|t| SGClass { g: t[0].clone(), h: t[1..].to_vec() })
        .collect()
}

fn mat_pow(m: &Matrix<Cyclotomic>, k: i64) -> Result<Matrix<Cyclotomic>> {
    let n = m.rows();
    let base = if k < 0 {
        m.solve(&Matrix::identity(n))
            .ok_or_else(|| Error::Invalid("fiber image is singular".into()))?
    } else {
        m.clone()
    };
    let mut out = Matrix::identity(n);
    for _ in 0..k.unsigned_abs() {
        out = out.matmul(&base);
    }
    Ok(out)
}

/// Closed-form torsion of M(p_1/q_1, .., p_m/q_m) twisted by a
/// representation with rho(x), rho(y_i) given as matrices over a
/// cyclotomic field:
/// `det(rho(x) - I)^{m-2} / prod_i det(rho(x^{s_i} y_i^{r_i}) - I)`.
pub fn seifert_torsion(
    params: &SeifertParams,
    rho_x: &Matrix<Cyclotomic>,
    rho_y: &[Matrix<Cyclotomic>],
    units: &UnitGroupSpec,
) -> Result<TorsionValue> {
    let m = params.m();
    if rho_y.len() != m {
        return Err(Error::Invalid("one matrix per exceptional fiber required".into()));
    }
    let n = rho_x.rows();
    let d = rho_x.sub(&Matrix::identity(n)).det()?;
    if d.is_zero() {
        return Err(Error::Hypothesis("det(rho(x) - I) = 0".into()));
    }
    let mut value = d.pow(m as i64 - 2);
    for (i, f) in params.fibers.iter().enumerate() {
        let core = mat_pow(rho_x, f.s)?.matmul(&mat_pow(&rho_y[i], f.r)?);
        let di = core.sub(&Matrix::identity(n)).det()?;
        if di.is_zero() {
            return Err(Error::Hypothesis(format!(
                "fiber {} filling is not acyclic: det(rho(x^s y^r) - I) = 0",
                i + 1
            )));
        }
        value = value.mul(&di.inv());
    }
    Ok(TorsionValue::scalar(value, units.clone()).canonicalize())
}

/// A surjection of the Seifert manifold group onto <zeta_order> by
/// exponents: x -> zeta^a, y_i -> zeta^{b_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertCharacter {
    pub order: u32,
    pub a: i64,
    pub b: Vec<i64>,
}

/// All surjections H_1(M(params)) -> Z/p as exponent tuples. Requires
/// H_1 cyclic of order exactly p; brute force over residues subject to
/// a q_i + b_i p_i = 0 and sum b_i = 0 (mod p), keeping the surjective
/// solutions.
pub fn enumerate_characters(params: &SeifertParams, p: u32) -> Result<Vec<SeifertCharacter>> {
    let (factors, rank) = abelianization(&seifert_presentation(params));
    if rank != 0 || factors != vec![BigInt::from(p)] {
        return Err(Error::Hypothesis(format!(
            "H1 is not cyclic of order {p} (factors {factors:?}, rank {rank})"
        )));
    }
    let m = params.m();
    let p = p as i64;
    let mut out = vec![];
    // odometer over (a, b_1, .., b_m) in (Z/p)^{m+1}
    let mut exps = vec![0i64; m + 1];
    loop {
        let a = exps[0];
        let b = &exps[1..];
        let fiber_ok = params
            .fibers
            .iter()
            .zip(b)
            .all(|(f, &bi)| (a * f.q + bi * f.p).rem_euclid(p) == 0);
        let sum_ok = b.iter().sum::<i64>().rem_euclid(p) == 0;
        let surjective = b.iter().fold(a.gcd(&p), |g, bi| g.gcd(bi)) == 1;
        if fiber_ok && sum_ok && surjective {
            out.push(SeifertCharacter { order: p as u32, a, b: b.to_vec() });
        }
        let mut i = 0;
        loop {
            if i > m {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < p {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Torsion set of the Seifert manifold twisted by `alpha (x) phi rho`
/// over the classes in S_G:
/// `det(zeta^a phi(g) - I)^{m-2} / prod_i det(zeta^{a s_i + b_i r_i}
/// phi(g^{s_i} h_i^{r_i}) - I)` per class.
pub fn seifert_invariant_set(
    params: &SeifertParams,
    g: &PermGroup,
    phi: &Representation,
    chi: &SeifertCharacter,
) -> Result<ManifoldInvariantSet> {
    let classes = enumerate_sg(params, g);
    seifert_invariant_set_over(params, &classes, phi, chi)
}

/// As `seifert_invariant_set`, with the S_G classes already enumerated.
pub fn seifert_invariant_set_over(
    params: &SeifertParams,
    classes: &[SGClass],
    phi: &Representation,
    chi: &SeifertCharacter,
) -> Result<ManifoldInvariantSet> {
    let p = chi.order;
    let m = params.m() as i64;
    let units = UnitGroupSpec::scalar_side(p, &phi.det_root_units()?);
    let mut out = ManifoldInvariantSet::default();
    for cls in classes {
        let d = twist_det(phi, &cls.g, p, chi.a)?;
        if d.is_zero() {
            return Err(Error::Hypothesis(format!(
                "det(zeta^a phi(g) - I) = 0 for class [{}]",
                cls.g
            )));
        }
        let mut value = d.pow(m - 2);
        for (i, f) in params.fibers.iter().enumerate() {
            let core = cls.g.pow(f.s).mul(&cls.h[i].pow(f.r));
            let exp = chi.a * f.s + chi.b[i] * f.r;
            let di = twist_det(phi, &core, p, exp)?;
            if di.is_zero() {
                return Err(Error::Hypothesis(format!(
                    "fiber {} factor vanishes for class [{}]",
                    i + 1,
                    cls.g
                )));
            }
            value = value.mul(&di.inv());
        }
        out.elements.push(ManifoldTorsion {
            class: cls.tuple(),
            value: TorsionValue::scalar(value, units.clone()).canonicalize(),
        });
    }
    Ok(out)
}

/// |v|^2 as an exact rational, for a scalar (or constant) torsion value
/// whose declared units all have modulus 1; well-defined on the class.
pub fn modulus_profile(v: &TorsionValue) -> Result<Rational> {
    use crate::algebra::TorsionScalar;
    let c = v.canonicalize();
    let z = match c.value() {
        TorsionScalar::Scalar(z) => z.clone(),
        TorsionScalar::Fraction(f) => {
            if !f.is_polynomial()
                || f.numer().max_exp() != f.numer().min_exp()
            {
                return Err(Error::Invalid(
                    "modulus profile needs a scalar torsion value".into(),
                ));
            }
            match f.numer().min_exp() {
                None => Cyclotomic::zero(),
                Some(e) => f.numer().coeff(e),
            }
        }
    };
    z.abs_square_rational()
}

/// One group to test against in the obstruction search; torsion sets
/// are only compared when a representation is supplied.
pub struct ObstructGroup {
    pub name: String,
    pub group: PermGroup,
    pub rep: Option<Representation>,
}

#[derive(Clone, Copy, Debug)]
pub struct ObstructBounds {
    /// Candidates range over p_i in 2..=max_p, 0 < |q_i| < p_i, m = 3.
    pub max_p: i64,
}

impl Default for ObstructBounds {
    fn default() -> Self {
        ObstructBounds { max_p: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub fractions: Vec<(i64, i64)>,
    /// A distinguishing witness, if the candidate is ruled out.
    pub incompatible: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub struct ObstructReport {
    /// Order of the (cyclic) first homology of the surgered manifold.
    pub order: u32,
    /// Surviving surjection-class counts on the knot side, per group.
    pub knot_counts: Vec<(String, usize)>,
    /// Knot-side torsion sets, per group with a representation.
    pub knot_values: Vec<(String, Vec<TorsionValue>)>,
    /// Number of parameter triples inspected before the homology filter.
    pub searched: usize,
    /// Candidates surviving the homology filter, each with a verdict.
    pub candidates: Vec<CandidateReport>,
}

impl ObstructReport {
    /// True when every surviving candidate is ruled out.
    pub fn all_incompatible(&self) -> bool {
        self.candidates.iter().all(|c| c.incompatible.is_some())
    }
}

fn same_value_set(a: &[TorsionValue], b: &[TorsionValue]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

/// Can p/q-surgery on the knot give a Seifert manifold M(p1/q1, p2/q2,
/// p3/q3) within the search bounds? For each candidate passing the
/// homology filter, compare surjection-class counts and (over every
/// character on the Seifert side, since a homeomorphism's induced
/// character is unknown) twisted torsion sets.
pub fn obstruct(
    knot: &MarkedPresentation,
    sl: &SurgerySlope,
    groups: &[ObstructGroup],
    bounds: &ObstructBounds,
) -> Result<ObstructReport> {
    let filled = crate::surgery::surgered_presentation(knot, sl);
    let (factors, rank) = abelianization(&filled);
    if rank != 0 || factors.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "surgered manifold needs cyclic first homology, got factors {factors:?}, rank {rank}"
        )));
    }
    let p: u32 = num_traits::ToPrimitive::to_u32(&factors[0])
        .ok_or_else(|| Error::Invalid("homology order out of range".into()))?;

    // knot side, once per group
    let mut knot_counts = vec![];
    let mut knot_values = vec![];
    for og in groups {
        let count = knot_surjections(knot, &og.group)
            .iter()
            .filter(|h| {
                let lam = h.eval(&knot.longitude, og.group.degree());
                let mu = h.images[knot.meridian].clone();
                lam.pow(sl.q).mul(&mu.pow(sl.p)).is_identity()
            })
            .count();
        knot_counts.push((og.name.clone(), count));
        if let Some(rep) = &og.rep {
            let set =
                surgery_invariant_set(knot, sl, &og.group, rep, &CharacterBeta { order: p })?;
            knot_values.push((og.name.clone(), set.values()));
        }
    }

    // candidate fractions, canonically ordered triples
    let mut fracs: Vec<(i64, i64)> = vec![];
    for pi in 2..=bounds.max_p {
        for qi in (1 - pi)..pi {
            if qi != 0 && qi.gcd(&pi) == 1 {
                fracs.push((pi, qi));
            }
        }
    }
    let mut searched = 0usize;
    let mut candidates = vec![];
    for i in 0..fracs.len() {
        for j in i..fracs.len() {
            for k in j..fracs.len() {
                searched += 1;
                let params = SeifertParams::new(&[fracs[i], fracs[j], fracs[k]])?;
                if homology_order(&params) != p as i64 {
                    continue;
                }
                let (f, r) = abelianization(&seifert_presentation(&params));
                if r != 0 || f != factors {
                    continue;
                }
                candidates.push(examine_candidate(
                    &params,
                    groups,
                    &knot_counts,
                    &knot_values,
                    p,
                )?);
            }
        }
    }

    Ok(ObstructReport { order: p, knot_counts, knot_values, searched, candidates })
}

fn examine_candidate(
    params: &SeifertParams,
    groups: &[ObstructGroup],
    knot_counts: &[(String, usize)],
    knot_values: &[(String, Vec<TorsionValue>)],
    p: u32,
) -> Result<CandidateReport> {
    let mut incompatible = None;
    let mut notes = vec![];
    for (og, (_, count)) in groups.iter().zip(knot_counts) {
        let classes = enumerate_sg(params, &og.group);
        if classes.len() != *count {
            incompatible = Some(format!(
                "|S_{}| = {} but the knot side has {} classes",
                og.name,
                classes.len(),
                count
            ));
            break;
        }
        if classes.is_empty() {
            continue;
        }
        let (rep, target) = match (&og.rep, knot_values.iter().find(|(n, _)| *n == og.name)) {
            (Some(rep), Some((_, target))) => (rep, target),
            _ => continue,
        };
        let mut matched = false;
        for chi in enumerate_characters(params, p)? {
            match seifert_invariant_set_over(params, &classes, rep, &chi) {
                Ok(set) => {
                    if same_value_set(&set.values(), target) {
                        matched = true;
                        break;
                    }
                }
                Err(Error::Hypothesis(msg)) => {
                    notes.push(format!("character (a={}, b={:?}): {}", chi.a, chi.b, msg));
                }
                Err(e) => return Err(e),
            }
        }
        if !matched {
            let shown: Vec<String> = target.iter().map(|v| v.to_string()).collect();
            incompatible = Some(format!(
                "no character reproduces the {} torsion set {{{}}}",
                og.name,
                shown.join(", ")
            ));
            break;
        }
    }
    Ok(CandidateReport { fractions: params.fractions(), incompatible, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::enumerate_surjections;

    fn kt_example() -> SeifertParams {
        SeifertParams::new(&[(3, 2), (-3, 1), (-5, 1)]).unwrap()
    }

    #[test]
    fn params_normalize_and_validate() {
        let p = kt_example();
        assert_eq!(p.fractions(), vec![(3, 2), (3, -1), (5, -1)]);
        for f in p.fibers() {
            assert_eq!(f.p * f.s - f.q * f.r, 1);
        }
        assert!(SeifertParams::new(&[(3, 2)]).is_err());
        assert!(SeifertParams::new(&[(1, 1), (2, 1)]).is_err());
        assert!(SeifertParams::new(&[(4, 2), (2, 1)]).is_err());
    }

    #[test]
    fn homology_matches_snf_oracle() {
        assert_eq!(homology_order(&kt_example()), 6);
        let (factors, rank) = abelianization(&seifert_presentation(&kt_example()));
        assert_eq!(rank, 0);
        assert_eq!(factors, vec![BigInt::from(6)]);

        let p = SeifertParams::new(&[(2, 1), (2, 1)]).unwrap();
        assert_eq!(homology_order(&p), 4);

        for (a, b, c) in [((2, 1), (3, 1), (5, 1)), ((3, 2), (4, 3), (5, 4)), ((2, 1), (2, 1), (2, -1))] {
            let params = SeifertParams::new(&[a, b, c]).unwrap();
            let (factors, rank) = abelianization(&seifert_presentation(&params));
            let order = homology_order(&params);
            if order == 0 {
                assert!(rank > 0);
            } else {
                assert_eq!(rank, 0);
                let prod: BigInt = factors.iter().product();
                assert_eq!(prod, BigInt::from(order));
            }
        }
    }

    #[test]
    fn sg_three_involutions_never_generate_a5() {
        let params = SeifertParams::new(&[(2, 1), (2, 1), (2, 1)]).unwrap();
        assert!(enumerate_sg(&params, &PermGroup::alternating(5)).is_empty());
    }

    #[test]
    fn sg_matches_presentation_surjections() {
        // the correspondence x -> g, y_i -> h_i is bijective on
        // conjugacy classes of surjections
        let params = kt_example();
        let pres = seifert_presentation(&params);
        for g in [PermGroup::cyclic(6), PermGroup::alternating(4), PermGroup::alternating(5)] {
            let classes = enumerate_sg(&params, &g);
            // x lands in the center: forced by the commutator relators
            let mut constraint: Vec<Option<Vec<Perm>>> = vec![None; pres.gens.len()];
            constraint[0] = Some(g.center().to_vec());
            let homs = enumerate_surjections(&pres, &g, Some(&constraint));
            assert_eq!(classes.len(), homs.len());
            for cls in &classes {
                assert!(g.center().contains(&cls.g));
                let mut prod = Perm::identity(g.degree());
                for h in &cls.h {
                    prod = prod.mul(h);
                }
                assert!(prod.is_identity());
                for (f, h) in params.fibers().iter().zip(&cls.h) {
                    assert!(cls.g.pow(f.q).mul(&h.pow(f.p)).is_identity());
                }
                assert!(g.generates(&cls.tuple()));
            }
        }
    }

    #[test]
    fn characters_of_small_homology() {
        // phi(6) = 2 surjections; both have a = 3
        let chars = enumerate_characters(&kt_example(), 6).unwrap();
        assert_eq!(chars.len(), 2);
        for c in &chars {
            assert_eq!(c.a, 3);
            assert_eq!(
                c.b.iter().sum::<i64>().rem_euclid(6),
                0
            );
        }
        let p4 = SeifertParams::new(&[(2, 1), (2, 1)]).unwrap();
        assert_eq!(enumerate_characters(&p4, 4).unwrap().len(), 2);
        assert!(enumerate_characters(&p4, 5).is_err());
    }

    #[test]
    fn abelian_torsion_is_trivial() {
        // through either character onto <zeta_6>, tau = [1]
        let params = kt_example();
        let g = PermGroup::trivial(1);
        let phi = Representation::trivial(&g, 1);
        for chi in enumerate_characters(&params, 6).unwrap() {
            let set = seifert_invariant_set(&params, &g, &phi, &chi).unwrap();
            assert_eq!(set.elements.len(), 1);
            let units = UnitGroupSpec::scalar_side(6, &[Cyclotomic::one()]);
            let one = TorsionValue::scalar(Cyclotomic::one(), units);
            assert_eq!(set.values(), vec![one]);
        }
    }

    #[test]
    fn closed_form_requires_nontrivial_fiber_image() {
        let params = kt_example();
        let units = UnitGroupSpec::scalar_side(6, &[]);
        let id = Matrix::identity(1);
        let err = seifert_torsion(&params, &id, &[id.clone(), id.clone(), id.clone()], &units);
        assert!(matches!(err, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn closed_form_agrees_with_character_evaluation() {
        // scalar rho through zeta^a, zeta^{b_i} equals the set formula
        let params = kt_example();
        let chi = enumerate_characters(&params, 6).unwrap().remove(0);
        let z = |k: i64| Matrix::new(1, 1, vec![Cyclotomic::zeta_pow(6, k)]);
        let units = UnitGroupSpec::scalar_side(6, &[Cyclotomic::one()]);
        let direct = seifert_torsion(
            &params,
            &z(chi.a),
            &[z(chi.b[0]), z(chi.b[1]), z(chi.b[2])],
            &units,
        )
        .unwrap();
        let g = PermGroup::trivial(1);
        let phi = Representation::trivial(&g, 1);
        let set = seifert_invariant_set(&params, &g, &phi, &chi).unwrap();
        assert_eq!(set.values(), vec![direct]);
    }

    #[test]
    fn lens_degeneration_exponent_vanishes() {
        // m = 2: numerator exponent is 0, value is the product of the
        // two filling factors inverted
        let params = SeifertParams::new(&[(5, 1), (2, 1)]).unwrap();
        let units = UnitGroupSpec::scalar_side(10, &[]);
        let z = Cyclotomic::zeta(10);
        let rho_x = Matrix::new(1, 1, vec![z.clone()]);
        let rho_y = [
            Matrix::new(1, 1, vec![z.pow(3)]),
            Matrix::new(1, 1, vec![z.pow(7)]),
        ];
        let v = seifert_torsion(&params, &rho_x, &rho_y, &units).unwrap();
        let mut expect = Cyclotomic::one();
        for (f, ry) in params.fibers().iter().zip(&rho_y) {
            let c = z.pow(f.s).mul(&ry[(0, 0)].pow(f.r)).sub(&Cyclotomic::one());
            expect = expect.mul(&c.inv());
        }
        assert_eq!(v, TorsionValue::scalar(expect, units));
    }

    #[test]
    fn companion_shift_invariance() {
        let params = kt_example();
        let g = PermGroup::trivial(1);
        let phi = Representation::trivial(&g, 1);
        for chi in enumerate_characters(&params, 6).unwrap() {
            let base = seifert_invariant_set(&params, &g, &phi, &chi).unwrap().values();
            for i in 0..3 {
                for k in [-1, 1, 2] {
                    let shifted = params.shifted(i, k);
                    let vals =
                        seifert_invariant_set(&shifted, &g, &phi, &chi).unwrap().values();
                    assert_eq!(vals, base);
                }
            }
        }
    }

    #[test]
    fn modulus_profile_examples() {
        let units = UnitGroupSpec::scalar_side(6, &[]);
        let v = TorsionValue::scalar(Cyclotomic::from_int(29), units.clone());
        assert_eq!(modulus_profile(&v).unwrap(), Rational::from(BigInt::from(841)));
        let z3 = Cyclotomic::zeta_pow(6, 3);
        let w = TorsionValue::scalar(z3.sub(&Cyclotomic::one()).pow(4), units.clone());
        assert_eq!(modulus_profile(&w).unwrap(), Rational::from(BigInt::from(256)));
        let one = TorsionValue::scalar(Cyclotomic::one(), units);
        assert_eq!(modulus_profile(&one).unwrap(), Rational::from(BigInt::from(1)));
        // genuinely t-dependent input is rejected
        let knot = UnitGroupSpec::knot_side(&[]);
        let tp2 = crate::algebra::LaurentPoly::t()
            .add(&crate::algebra::LaurentPoly::from_int(2));
        let t = TorsionValue::fraction(
            crate::algebra::LaurentRational::from_poly(tp2),
            knot,
        );
        assert!(modulus_profile(&t).is_err());
    }

    #[test]
    fn obstruct_smoke_on_unknot() {
        // 5/1 on the unknot is the lens space L(5,1); the three-fiber
        // search machinery must run and classify every candidate
        let knot = MarkedPresentation {
            pres: FinitePresentation::new(vec!["a".into()], vec![]).unwrap(),
            meridian: 0,
            longitude: vec![],
        };
        let sl = crate::surgery::slope(5, 1).unwrap();
        let groups = vec![ObstructGroup {
            name: "trivial".into(),
            group: PermGroup::trivial(1),
            rep: Some(Representation::trivial(&PermGroup::trivial(1), 1)),
        }];
        let report =
            obstruct(&knot, &sl, &groups, &ObstructBounds { max_p: 7 }).unwrap();
        assert_eq!(report.order, 5);
        assert_eq!(report.knot_counts, vec![("trivial".to_string(), 1)]);
        assert!(report.searched > 0);
        assert!(!report.candidates.is_empty());
        for c in &report.candidates {
            let params = SeifertParams::new(&c.fractions).unwrap();
            assert_eq!(homology_order(&params), 5);
        }
    }
}
