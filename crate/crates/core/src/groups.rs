//! Permutation groups and enumeration of surjective homomorphisms from
//! finitely presented groups onto them, up to conjugacy.

use std::collections::BTreeSet;
use std::fmt;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};

/// A permutation of {0, .., n-1}, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Parse disjoint cycle notation with 1-based points, e.g.
    /// "(1 2 3)(4 5)"; "()" or "" is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let body = s.trim();
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle notation: {s}")))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in: {s}")))?
                + open;
            let cycle: Vec<usize> = rest[open + 1..close]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {t} in {s}")))
                })
                .collect::<Result<_>>()?;
            for &p in &cycle {
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!("point {p} out of range 1..{degree}")));
                }
            }
            for w in 0..cycle.len() {
                let from = cycle[w] - 1;
                let to = cycle[(w + 1) % cycle.len()] - 1;
                images[from] = to;
            }
            rest = &rest[close + 1..];
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// (self * other)(i) = self(other(i)).
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x] = i;
        }
        Perm(r)
    }

    pub fn conj_by(&self, g: &Perm) -> Perm {
        g.mul(self).mul(&g.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Number of fixed points (used by permutation characters).
    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = vec![];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j];
                len += 1;
            }
            if len > 1 {
                out.push(len);
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for i in 0..n {
            if seen[i] || self.0[i] == i {
                seen[i] = true;
                continue;
            }
            write!(f, "(")?;
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", j + 1)?;
                first = false;
                j = self.0[j];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite permutation group given by generators, with lazily computed
/// element list, conjugacy classes and center.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: OnceCell<Vec<Perm>>,
    classes: OnceCell<Vec<Vec<Perm>>>,
    center: OnceCell<Vec<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new(self.degree, self.gens.clone())
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        assert!(gens.iter().all(|g| g.degree() == degree));
        PermGroup {
            degree,
            gens,
            elements: OnceCell::new(),
            classes: OnceCell::new(),
            center: OnceCell::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![])
    }

    pub fn cyclic(n: usize) -> Self {
        let mut img: Vec<usize> = (1..n).collect();
        img.push(0);
        Self::new(n, vec![Perm(img)])
    }

    pub fn alternating(n: usize) -> Self {
        assert!(n >= 3);
        let c3 = Perm::parse_cycles("(1 2 3)", n).unwrap();
        let big = if n % 2 == 1 {
            // n-cycle is even for odd n
            Perm(
                (0..n)
                    .map(|i| (i + 1) % n)
                    .collect(),
            )
        } else {
            // (n-1)-cycle (2 3 .. n), even since n-1 is odd
            Perm(
                (0..n)
                    .map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 })
                    .collect(),
            )
        };
        Self::new(n, vec![c3, big])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// Sorted element list (closure of the generators).
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let mut elems: BTreeSet<Perm> = BTreeSet::new();
            elems.insert(Perm::identity(self.degree));
            let mut frontier: Vec<Perm> = vec![Perm::identity(self.degree)];
            while let Some(x) = frontier.pop() {
                for g in &self.gens {
                    let y = x.mul(g);
                    if elems.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            elems.into_iter().collect()
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements().binary_search(p).is_ok()
    }

    /// Conjugacy classes, each sorted, ordered by (size, representative).
    pub fn conjugacy_classes(&self) -> &[Vec<Perm>] {
        self.classes.get_or_init(|| {
            let elems = self.elements();
            let mut unseen: BTreeSet<&Perm> = elems.iter().collect();
            let mut classes = vec![];
            while let Some(x) = unseen.iter().next().cloned() {
                let cls: BTreeSet<Perm> =
                    elems.iter().map(|g| x.conj_by(g)).collect();
                for y in &cls {
                    unseen.remove(y);
                }
                classes.push(cls.into_iter().collect::<Vec<_>>());
            }
            classes.sort_by_key(|c: &Vec<Perm>| (c.len(), c[0].clone()));
            classes
        })
    }

    /// The conjugacy class of a given element.
    pub fn class_of(&self, p: &Perm) -> &[Perm] {
        self.conjugacy_classes()
            .iter()
            .find(|c| c.binary_search(p).is_ok())
            .expect("element not in group")
    }

    pub fn center(&self) -> &[Perm] {
        self.center.get_or_init(|| {
            self.elements()
                .iter()
                .filter(|x| self.gens.iter().all(|g| x.mul(g) == g.mul(x)))
                .cloned()
                .collect()
        })
    }

    /// Does the closure of `elems` give the whole group?
    pub fn generates(&self, elems: &[Perm]) -> bool {
        let sub = PermGroup::new(self.degree, elems.to_vec());
        sub.order() == self.order()
    }

    /// Minimal tuple in the simultaneous-conjugation orbit.
    pub fn orbit_representative(&self, tuple: &[Perm]) -> Vec<Perm> {
        self.elements()
            .iter()
            .map(|g| tuple.iter().map(|x| x.conj_by(g)).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| tuple.to_vec())
    }
}

/// A word in named generators: letters (generator index, exponent).
pub type GroupWord = Vec<(usize, i64)>;

/// Parse a word like "x y1 x^-1 y1^-1" against a generator list.
pub fn parse_word(s: &str, gens: &[String]) -> Result<GroupWord> {
    let mut out: GroupWord = vec![];
    for tok in s.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok}")))?,
            ),
            None => (tok, 1),
        };
        let idx = gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name}")))?;
        if exp != 0 {
            out.push((idx, exp));
        }
    }
    Ok(out)
}

/// Expand a word into unit letters (gen, +-1).
pub fn word_letters(w: &GroupWord) -> Vec<(usize, i64)> {
    let mut out = vec![];
    for &(g, e) in w {
        let s = e.signum();
        for _ in 0..e.unsigned_abs() {
            out.push((g, s));
        }
    }
    out
}

/// Evaluate a word under a full assignment of generator images.
pub fn eval_word(w: &GroupWord, images: &[Perm], degree: usize) -> Perm {
    let mut out = Perm::identity(degree);
    for (g, s) in word_letters(w) {
        let x = if s == 1 { images[g].clone() } else { images[g].inv() };
        out = out.mul(&x);
    }
    out
}

#[derive(Clone, Debug)]
pub struct FinitePresentation {
    pub gens: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl FinitePresentation {
    pub fn new(gens: Vec<String>, relators: Vec<GroupWord>) -> Result<Self> {
        for r in &relators {
            for &(g, _) in r {
                if g >= gens.len() {
                    return Err(Error::Invalid("relator uses undeclared generator".into()));
                }
            }
        }
        Ok(FinitePresentation { gens, relators })
    }
}

/// One conjugacy class of homomorphisms onto (or into) G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    /// Orbit-minimal generator images.
    pub images: Vec<Perm>,
    pub surjective: bool,
}

impl HomClass {
    pub fn eval(&self, w: &GroupWord, degree: usize) -> Perm {
        eval_word(w, &self.images, degree)
    }
}

/// Enumerate surjective homomorphisms `p -> g` up to conjugacy.
///
/// `constraint[i]`, when present, restricts the image of generator i to
/// the given candidate list (e.g. one conjugacy class for Wirtinger
/// generators, or a single element for conjugation gauge fixing).
///
/// Depth-first search with unit propagation: any relator in which
/// exactly one unassigned generator occurs, exactly once and with
/// exponent +-1, determines that generator's image.
pub fn enumerate_surjections(
    p: &FinitePresentation,
    g: &PermGroup,
    constraint: Option<&[Option<Vec<Perm>>]>,
) -> Vec<HomClass> {
    let n = p.gens.len();
    let degree = g.degree();
    let letters: Vec<Vec<(usize, i64)>> =
        p.relators.iter().map(word_letters).collect();
    let all: Vec<Perm> = g.elements().to_vec();
    let allowed: Vec<&[Perm]> = (0..n)
        .map(|i| match constraint.and_then(|c| c[i].as_deref()) {
            Some(list) => list,
            None => all.as_slice(),
        })
        .collect();
    let mut found: BTreeSet<Vec<Perm>> = BTreeSet::new();

    fn propagate(
        letters: &[Vec<(usize, i64)>],
        asg: &mut Vec<Option<Perm>>,
        degree: usize,
        check_allowed: &dyn Fn(usize, &Perm) -> bool,
    ) -> bool {
        loop {
            let mut changed = false;
            for word in letters {
                let unknowns: Vec<usize> = word
                    .iter()
                    .map(|&(g, _)| g)
                    .filter(|&g| asg[g].is_none())
                    .collect();
                match unknowns.len() {
                    0 => {
                        let mut v = Perm::identity(degree);
                        for &(g, s) in word {
                            let x = asg[g].as_ref().unwrap();
                            v = v.mul(&if s == 1 { x.clone() } else { x.inv() });
                        }
                        if !v.is_identity() {
                            return false;
                        }
                    }
                    1 => {
                        let u = unknowns[0];
                        // prefix * x^e * suffix = 1  =>  x^e = prefix^-1 suffix^-1
                        let pos = word.iter().position(|&(g, _)| g == u).unwrap();
                        let mut prefix = Perm::identity(degree);
                        for &(g, s) in &word[..pos] {
                            let x = asg[g].as_ref().unwrap();
                            prefix = prefix.mul(&if s == 1 { x.clone() } else { x.inv() });
                        }
                        let mut suffix = Perm::identity(degree);
                        for &(g, s) in &word[pos + 1..] {
                            let x = asg[g].as_ref().unwrap();
                            suffix = suffix.mul(&if s == 1 { x.clone() } else { x.inv() });
                        }
                        let rhs = prefix.inv().mul(&suffix.inv());
                        let x = if word[pos].1 == 1 { rhs } else { rhs.inv() };
                        if !check_allowed(u, &x) {
                            return false;
                        }
                        asg[u] = Some(x);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(
        letters: &[Vec<(usize, i64)>],
        degree: usize,
        n: usize,
        g: &PermGroup,
        allowed: &[&[Perm]],
        asg: Vec<Option<Perm>>,
        found: &mut BTreeSet<Vec<Perm>>,
    ) {
        let mut asg = asg;
        let check = |i: usize, x: &Perm| allowed[i].contains(x);
        if !propagate(letters, &mut asg, degree, &check) {
            return;
        }
        match (0..n).find(|&i| asg[i].is_none()) {
            None => {
                let images: Vec<Perm> = asg.into_iter().map(Option::unwrap).collect();
                if g.generates(&images) {
                    let rep = g.orbit_representative(&images);
                    found.insert(rep);
                }
            }
            Some(i) => {
                for x in allowed[i] {
                    let mut next = asg.clone();
                    next[i] = Some(x.clone());
                    dfs(letters, degree, n, g, allowed, next, found);
                }
            }
        }
    }

    dfs(&letters, degree, n, g, &allowed, vec![None; n], &mut found);

    found
        .into_iter()
        .map(|images| HomClass { images, surjective: true })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let p = Perm::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse_cycles("", 4).unwrap(), Perm::identity(4));
    }

    #[test]
    fn mul_convention() {
        // (1 2) * (2 3) applies (2 3) first: 1 -> 2, 2 -> 3, 3 -> 1
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        assert_eq!(a.mul(&b), Perm::parse_cycles("(1 2 3)", 3).unwrap());
    }

    #[test]
    fn a5_structure() {
        let g = PermGroup::alternating(5);
        assert_eq!(g.order(), 60);
        let mut sizes: Vec<usize> =
            g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(g.center().len(), 1);
    }

    #[test]
    fn a4_structure() {
        let g = PermGroup::alternating(4);
        assert_eq!(g.order(), 12);
        let mut sizes: Vec<usize> =
            g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        assert_eq!(g.center().len(), 1);
    }

    #[test]
    fn cyclic_center_is_whole_group() {
        let g = PermGroup::cyclic(6);
        assert_eq!(g.center().len(), 6);
        assert_eq!(g.conjugacy_classes().len(), 6);
    }

    #[test]
    fn generates_a5() {
        let g = PermGroup::alternating(5);
        let five = Perm::parse_cycles("(1 2 3 4 5)", 5).unwrap();
        let three = Perm::parse_cycles("(1 2 3)", 5).unwrap();
        assert!(g.generates(&[five.clone(), three]));
        assert!(!g.generates(&[five.clone(), five.pow(2)]));
        assert!(g.generates(&g.elements().to_vec()));
    }

    #[test]
    fn orbit_representative_stability() {
        let g = PermGroup::alternating(5);
        let t345 = Perm::parse_cycles("(3 4 5)", 5).unwrap();
        let t123 = Perm::parse_cycles("(1 2 3)", 5).unwrap();
        let id = Perm::identity(5);
        let r1 = g.orbit_representative(&[id.clone(), t345]);
        let r2 = g.orbit_representative(&[id.clone(), t123]);
        assert_eq!(r1, r2);
        let all_id = vec![id.clone(), id.clone()];
        assert_eq!(g.orbit_representative(&all_id), all_id);
        // stability under pre-conjugation
        let tuple = vec![
            Perm::parse_cycles("(1 2 3)", 5).unwrap(),
            Perm::parse_cycles("(1 2)(4 5)", 5).unwrap(),
        ];
        for h in g.elements().iter().step_by(7) {
            let conj: Vec<Perm> = tuple.iter().map(|x| x.conj_by(h)).collect();
            assert_eq!(g.orbit_representative(&conj), g.orbit_representative(&tuple));
        }
    }

    #[test]
    fn trefoil_onto_s3() {
        // <a, b | a b a b^-1 a^-1 b^-1> onto the symmetric group on 3
        // letters (as a permutation group): exactly one class
        let s3 = PermGroup::new(
            3,
            vec![
                Perm::parse_cycles("(1 2)", 3).unwrap(),
                Perm::parse_cycles("(1 2 3)", 3).unwrap(),
            ],
        );
        let gens = vec!["a".to_string(), "b".to_string()];
        let rel = parse_word("a b a b^-1 a^-1 b^-1", &gens).unwrap();
        let p = FinitePresentation::new(gens, vec![rel]).unwrap();
        let homs = enumerate_surjections(&p, &s3, None);
        assert_eq!(homs.len(), 1);
        for h in &homs {
            for r in &p.relators {
                assert!(h.eval(r, 3).is_identity());
            }
        }
    }

    #[test]
    fn onto_trivial_group() {
        let gens = vec!["a".to_string()];
        let p = FinitePresentation::new(gens, vec![]).unwrap();
        let t = PermGroup::trivial(1);
        assert_eq!(enumerate_surjections(&p, &t, None).len(), 1);
    }

    #[test]
    fn free_one_generator_counts_generator_classes() {
        // x -> any generator of C6, up to conjugacy (C6 abelian): phi(6) = 2
        let c6 = PermGroup::cyclic(6);
        let p = FinitePresentation::new(vec!["x".to_string()], vec![]).unwrap();
        assert_eq!(enumerate_surjections(&p, &c6, None).len(), 2);
    }

    #[test]
    fn constraint_restricts_images() {
        let s3 = PermGroup::new(
            3,
            vec![
                Perm::parse_cycles("(1 2)", 3).unwrap(),
                Perm::parse_cycles("(1 2 3)", 3).unwrap(),
            ],
        );
        let gens = vec!["a".to_string(), "b".to_string()];
        let rel = parse_word("a b a b^-1 a^-1 b^-1", &gens).unwrap();
        let p = FinitePresentation::new(gens, vec![rel]).unwrap();
        // restrict both generators to 3-cycles: no surjection (they
        // generate at most A3)
        let three_cycles: Vec<Perm> = s3
            .elements()
            .iter()
            .filter(|x| x.order() == 3)
            .cloned()
            .collect();
        let constraint = vec![Some(three_cycles.clone()), Some(three_cycles)];
        assert!(enumerate_surjections(&p, &s3, Some(&constraint)).is_empty());
    }
}
