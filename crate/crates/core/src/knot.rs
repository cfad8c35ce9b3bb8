//! Knot diagrams, Wirtinger presentations with peripheral system, Fox
//! calculus, and the peripherally-filtered twisted torsion set of a knot
//! exterior.

use std::collections::BTreeMap;

use crate::algebra::{
    Cyclotomic, LaurentPoly, LaurentRational, Matrix, Rational, Ring, TorsionValue,
    UnitGroupSpec,
};
use crate::error::{Error, Result};
use crate::groups::{
    enumerate_surjections, word_letters, FinitePresentation, GroupWord, HomClass,
    Perm, PermGroup,
};

/// A knot diagram as a planar-diagram code: crossings `X(a,b,c,d)`
/// listed counterclockwise from the incoming under-strand, with edges
/// labelled 1..2n consecutively along the orientation.
#[derive(Clone, Debug)]
pub struct PDCode {
    crossings: Vec<[usize; 4]>,
    signs: Vec<i64>,
    /// arc id of each edge (1-based edge labels)
    arc_of: Vec<usize>,
    arcs: usize,
}

impl PDCode {
    pub fn new(crossings: Vec<[usize; 4]>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Parse("empty PD code".into()));
        }
        let n = crossings.len();
        let ne = 2 * n;
        let mut count = vec![0usize; ne + 1];
        for x in &crossings {
            for &l in x {
                if l < 1 || l > ne {
                    return Err(Error::Parse(format!("edge label {l} out of range 1..{ne}")));
                }
                count[l] += 1;
            }
        }
        if count[1..].iter().any(|&c| c != 2) {
            return Err(Error::Parse("every edge label must appear exactly twice".into()));
        }
        let succ = |e: usize| e % ne + 1;
        let mut signs = Vec::with_capacity(n);
        for &[a, b, c, d] in &crossings {
            if succ(a) != c {
                return Err(Error::Parse(format!(
                    "under-strand must run {a} -> {}, got {c}",
                    succ(a)
                )));
            }
            if succ(b) == d {
                signs.push(-1);
            } else if succ(d) == b {
                signs.push(1);
            } else {
                return Err(Error::Parse("over-strand edges not consecutive".into()));
            }
        }
        // arcs: an over-arc ends after each under-entering edge a
        let breaks: Vec<bool> = {
            let mut b = vec![false; ne + 1];
            for &[a, _, _, _] in &crossings {
                b[a] = true;
            }
            b
        };
        let mut e0 = 1;
        for e in 1..=ne {
            if breaks[e] {
                e0 = succ(e);
                break;
            }
        }
        let mut arc_of = vec![0usize; ne + 1];
        let mut aid = 0usize;
        let mut e = e0;
        for _ in 0..ne {
            arc_of[e] = aid;
            if breaks[e] {
                aid += 1;
            }
            e = succ(e);
        }
        if aid != n {
            return Err(Error::Parse("diagram is not a single knot component".into()));
        }
        Ok(PDCode { crossings, signs, arc_of, arcs: n })
    }

    /// Parse text of the form `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`; square
    /// brackets and commas/whitespace between crossings also accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = vec![];
        let cleaned = text.replace('[', "(").replace(']', ")");
        let mut rest = cleaned.as_str();
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed crossing".into()))?
                + open;
            let nums: Vec<usize> = rest[open + 1..close]
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad edge label: {t}")))
                })
                .collect::<Result<_>>()?;
            if nums.len() != 4 {
                return Err(Error::Parse("crossing needs exactly 4 edge labels".into()));
            }
            crossings.push([nums[0], nums[1], nums[2], nums[3]]);
            rest = &rest[close + 1..];
        }
        Self::new(crossings)
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i]
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().sum()
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    fn succ(&self, e: usize) -> usize {
        e % (2 * self.crossings.len()) + 1
    }
}

/// A finite presentation with a distinguished meridian generator and a
/// longitude word (null-homologous: zero total exponent).
#[derive(Clone, Debug)]
pub struct MarkedPresentation {
    pub pres: FinitePresentation,
    pub meridian: usize,
    pub longitude: GroupWord,
}

impl MarkedPresentation {
    /// Exponent sum of the longitude; must be 0 for the preferred frame.
    pub fn longitude_winding(&self) -> i64 {
        self.longitude.iter().map(|&(_, e)| e).sum()
    }
}

/// Wirtinger presentation: one generator per over-arc, one relator
/// `x_o^e x_in x_o^{-e} x_out^{-1}` per crossing; the longitude is the
/// product of over-arc conjugators in reverse traversal order, corrected
/// by meridian^{-writhe}.
pub fn wirtinger(d: &PDCode) -> MarkedPresentation {
    let n = d.num_crossings();
    let gens: Vec<String> = (0..d.arcs()).map(|i| format!("x{i}")).collect();
    let mut relators: Vec<GroupWord> = vec![];
    for (i, &[a, b, c, _]) in d.crossings().iter().enumerate() {
        let e = d.sign(i);
        let o = d.arc_of[b];
        let x_in = d.arc_of[a];
        let x_out = d.arc_of[c];
        relators.push(vec![(o, e), (x_in, 1), (o, -e), (x_out, -1)]);
    }
    let meridian = d.arc_of[1];
    let mut lon: GroupWord = vec![];
    let mut e = 1usize;
    for _ in 0..2 * n {
        for (i, &[a, b, _, _]) in d.crossings().iter().enumerate() {
            if a == e {
                lon.push((d.arc_of[b], d.sign(i)));
            }
        }
        e = d.succ(e);
    }
    lon.reverse();
    lon.push((meridian, -d.writhe()));
    // merge adjacent letters of the same generator
    let mut longitude: GroupWord = vec![];
    for (g, k) in lon {
        if k == 0 {
            continue;
        }
        match longitude.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += k;
                if last.1 == 0 {
                    longitude.pop();
                }
            }
            _ => longitude.push((g, k)),
        }
    }
    MarkedPresentation {
        pres: FinitePresentation::new(gens, relators).expect("relators use declared generators"),
        meridian,
        longitude,
    }
}

/// A linear representation of a finite permutation group with rational
/// matrix entries, stored on every element.
#[derive(Clone, Debug)]
pub struct Representation {
    dim: usize,
    images: BTreeMap<Perm, Matrix<Rational>>,
}

impl Representation {
    /// Build from generator images by closing under multiplication;
    /// fails if the assignment is not multiplicative.
    pub fn from_gens(g: &PermGroup, mats: &[Matrix<Rational>]) -> Result<Self> {
        if mats.len() != g.gens().len() {
            return Err(Error::Invalid("one matrix per group generator required".into()));
        }
        let dim = if mats.is_empty() { 1 } else { mats[0].rows() };
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Invalid("generator images must be square, same size".into()));
        }
        let mut images: BTreeMap<Perm, Matrix<Rational>> = BTreeMap::new();
        let id = Perm::identity(g.degree());
        images.insert(id.clone(), Matrix::identity(dim));
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            let mx = images[&x].clone();
            for (gen, mat) in g.gens().iter().zip(mats) {
                let y = x.mul(gen);
                let my = mx.matmul(mat);
                match images.get(&y) {
                    Some(prev) => {
                        if *prev != my {
                            return Err(Error::Invalid(
                                "generator images are not multiplicative".into(),
                            ));
                        }
                    }
                    None => {
                        images.insert(y.clone(), my);
                        frontier.push(y);
                    }
                }
            }
        }
        Ok(Representation { dim, images })
    }

    /// Trivial n-dimensional representation.
    pub fn trivial(g: &PermGroup, n: usize) -> Self {
        let images = g
            .elements()
            .iter()
            .map(|p| (p.clone(), Matrix::identity(n)))
            .collect();
        Representation { dim: n, images }
    }

    /// The 4-dimensional representation of A5 from the natural action of
    /// S5 on C^5 / C(1,1,1,1,1), in the basis e_i - e_5.
    pub fn a5_standard() -> Self {
        let g = PermGroup::alternating(5);
        let images = g
            .elements()
            .iter()
            .map(|p| (p.clone(), standard_rep_a5(p).unwrap()))
            .collect();
        Representation { dim: 4, images }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn of(&self, p: &Perm) -> Result<&Matrix<Rational>> {
        self.images
            .get(p)
            .ok_or_else(|| Error::Invalid("element outside representation domain".into()))
    }

    /// Determinants of all images, as distinct cyclotomic root units
    /// (for integral finite-group representations these are +-1).
    pub fn det_root_units(&self) -> Result<Vec<Cyclotomic>> {
        let mut out: Vec<Cyclotomic> = vec![];
        for m in self.images.values() {
            let d = m.det()?;
            let one: Rational = <Rational as Ring>::one();
            let c = if d == one {
                Cyclotomic::one()
            } else if d == <Rational as Ring>::zero() - one {
                Cyclotomic::one().neg()
            } else {
                return Err(Error::Invalid(format!(
                    "representation determinant {d} is not a root of unity"
                )));
            };
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// Matrix of a degree-5 permutation on C^5 / C(1,..,1), basis e_i - e_5.
pub fn standard_rep_a5(p: &Perm) -> Result<Matrix<Rational>> {
    if p.degree() != 5 {
        return Err(Error::Invalid("expected a degree-5 permutation".into()));
    }
    let one = <Rational as Ring>::one;
    let m = Matrix::from_fn(4, 4, |r, i| {
        let mut v = <Rational as Ring>::zero();
        if p.apply(i) == r {
            v = v + one();
        }
        if p.apply(4) == r {
            v = v - one();
        }
        v
    });
    Ok(m)
}

/// Fox free-derivative block matrix of the relators through a matrix
/// assignment: rows indexed by relators, columns by generators, each
/// block n x n. `rep(g, s)` must return the image of generator g to the
/// power s in {1, -1}.
pub fn fox_matrix<T: Ring>(
    relators: &[GroupWord],
    num_gens: usize,
    n: usize,
    rep: &dyn Fn(usize, i64) -> Matrix<T>,
) -> Matrix<T> {
    if relators.is_empty() {
        return Matrix::zero(0, num_gens * n);
    }
    let mut blocks: Vec<Vec<Matrix<T>>> = vec![];
    for r in relators {
        let mut row: Vec<Matrix<T>> = (0..num_gens).map(|_| Matrix::zero(n, n)).collect();
        let mut prefix = Matrix::<T>::identity(n);
        for (g, s) in word_letters(r) {
            if s == 1 {
                // d(prefix * g)/dg += prefix
                row[g] = row[g].add(&prefix);
                prefix = prefix.matmul(&rep(g, 1));
            } else {
                // d(prefix * g^{-1})/dg -= prefix * g^{-1}
                prefix = prefix.matmul(&rep(g, -1));
                row[g] = row[g].sub(&prefix);
            }
        }
        blocks.push(row);
    }
    Matrix::from_blocks(&blocks)
}

/// The twisted cellular chain complex of the 2-complex of a
/// presentation: `0 -> F^{Rn} -> F^{Gn} -> F^n -> 0` with d2 the
/// transposed Fox matrix and d1 the transposed stack of
/// `rep(x_g) - I`. Row-vector boundaries are transposed so the complex
/// matches the column convention of `BasedComplex`.
pub fn presentation_complex<T: crate::algebra::Field>(
    relators: &[GroupWord],
    num_gens: usize,
    n: usize,
    rep: &dyn Fn(usize, i64) -> Matrix<T>,
) -> Result<crate::chain::BasedComplex<T>> {
    let fox = fox_matrix(relators, num_gens, n, rep);
    let d2 = Matrix::from_fn(num_gens * n, relators.len() * n, |i, j| fox[(j, i)].clone());
    let images: Vec<Matrix<T>> = (0..num_gens).map(|g| rep(g, 1)).collect();
    let d1 = Matrix::from_fn(n, num_gens * n, |i, j| {
        let (g, k) = (j / n, j % n);
        let v = images[g][(k, i)].clone();
        if k == i { v.sub(&T::one()) } else { v }
    });
    crate::chain::BasedComplex::new(
        vec![n, num_gens * n, relators.len() * n],
        vec![d1, d2],
    )
}

/// Matrix image of a generator under `alpha (x) phi rho`: t^{+-1} times
/// the rational matrix, as Laurent polynomials over Q.
fn twisted_image(mat: &Matrix<Rational>, inv: &Matrix<Rational>, s: i64) -> Matrix<LaurentPoly> {
    let (m, e) = if s == 1 { (mat, 1) } else { (inv, -1) };
    m.map(|q| LaurentPoly::monomial(e, Cyclotomic::from_rational(q.clone())))
}

/// Torsion of a deficiency-one marked presentation twisted by
/// `alpha (x) phi rho`, where `mats[i]` is the matrix image of generator
/// i (each abelianizing to t). One relator is dropped (`drop_relator`),
/// and the `deleted` generator's column block is removed; the value is
/// `det(A) / det(t*mats[deleted] - I)` as a canonical TorsionValue.
pub fn presentation_torsion(
    p: &MarkedPresentation,
    mats: &[Matrix<Rational>],
    drop_relator: Option<usize>,
    deleted: usize,
    units: &UnitGroupSpec,
) -> Result<TorsionValue> {
    let num_gens = p.pres.gens.len();
    if mats.len() != num_gens {
        return Err(Error::Invalid("one matrix per generator required".into()));
    }
    let n = if mats.is_empty() { 1 } else { mats[0].rows() };
    let mut relators: Vec<GroupWord> = p.pres.relators.clone();
    if let Some(i) = drop_relator {
        relators.remove(i);
    }
    if relators.len() + 1 != num_gens {
        return Err(Error::BadDeficiency);
    }
    // denominator: det(t * phi(rho(deleted)) - I), nonzero since it is a
    // characteristic polynomial in t up to sign
    let tphi = mats[deleted].map(|q| {
        LaurentPoly::monomial(1, Cyclotomic::from_rational(q.clone()))
    });
    let den = tphi.sub(&Matrix::identity(n)).det_bareiss()?;
    if den.is_zero() {
        return Err(Error::Hypothesis("denominator determinant vanishes".into()));
    }
    let invs: Vec<Matrix<Rational>> = mats
        .iter()
        .map(invert_rational_matrix)
        .collect::<Result<_>>()?;
    let rep = |g: usize, s: i64| twisted_image(&mats[g], &invs[g], s);
    let fox = fox_matrix(&relators, num_gens, n, &rep);
    let cols: Vec<usize> = (0..num_gens)
        .filter(|&g| g != deleted)
        .flat_map(|g| g * n..(g + 1) * n)
        .collect();
    let num = fox.select_cols(&cols).det_bareiss()?;
    if num.is_zero() {
        // non-acyclic twisted complex: torsion is defined to be 0
        return Ok(TorsionValue::fraction(LaurentRational::zero(), units.clone()));
    }
    let value = LaurentRational::new(num, den);
    Ok(TorsionValue::fraction(value, units.clone()).canonicalize())
}

fn invert_rational_matrix(m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = m.rows();
    m.solve(&Matrix::identity(n))
        .ok_or_else(|| Error::Invalid("generator image is singular".into()))
}

/// Surjections of a Wirtinger-presented knot group onto G, one per
/// conjugacy class, found class-by-class over meridian images with the
/// meridian gauge-fixed to the class representative.
pub fn knot_surjections(p: &MarkedPresentation, g: &PermGroup) -> Vec<HomClass> {
    let num_gens = p.pres.gens.len();
    let mut out: Vec<HomClass> = vec![];
    for class in g.conjugacy_classes() {
        let mut constraint: Vec<Option<Vec<Perm>>> = vec![Some(class.to_vec()); num_gens];
        constraint[p.meridian] = Some(vec![class[0].clone()]);
        out.extend(enumerate_surjections(&p.pres, g, Some(&constraint)));
    }
    // gauge fixing may still produce conjugate duplicates across classes
    // of starting representative; enumerate_surjections already returns
    // orbit-minimal images, so plain dedup suffices
    out.sort_by(|a, b| a.images.cmp(&b.images));
    out.dedup_by(|a, b| a.images == b.images);
    out
}

/// The peripheral pair class [rho(lambda), rho(mu)] of a hom class.
pub fn peripheral_class(p: &MarkedPresentation, h: &HomClass, g: &PermGroup) -> Vec<Perm> {
    let lam = h.eval(&p.longitude, g.degree());
    let mu = h.images[p.meridian].clone();
    g.orbit_representative(&[lam, mu])
}

/// T_K^phi([g,h]): canonical torsion values of all surjections with the
/// given peripheral class.
pub fn knot_invariant_set(
    p: &MarkedPresentation,
    g: &PermGroup,
    phi: &Representation,
    class: &[Perm; 2],
) -> Result<Vec<TorsionValue>> {
    let target = g.orbit_representative(class.as_slice());
    let units = UnitGroupSpec::knot_side(&phi.det_root_units()?);
    let mut out: Vec<TorsionValue> = vec![];
    for h in knot_surjections(p, g) {
        if peripheral_class(p, &h, g) != target {
            continue;
        }
        let mats: Vec<Matrix<Rational>> = h
            .images
            .iter()
            .map(|x| phi.of(x).cloned())
            .collect::<Result<_>>()?;
        let drop = p.pres.relators.len().checked_sub(1);
        let tau = presentation_torsion(p, &mats, drop, p.meridian, &units)?;
        if !out.contains(&tau) {
            out.push(tau);
        }
    }
    Ok(out)
}
