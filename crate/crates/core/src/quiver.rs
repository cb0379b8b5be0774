//! Quivers, paths and elements of the free path algebra.
//!
//! Paths compose left to right: `ab` means "first `a`, then `b`", so a path
//! `a1 a2 ... ak` requires `target(a_i) = source(a_{i+1})`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{is_negative, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows. Declaration order of the
/// arrows is the ranking used by the monomial order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new<V: AsRef<str>, A: AsRef<str>>(vertices: &[V], arrows: &[(A, V, V)]) -> Result<Self> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.vertex_index.insert(name.to_string(), self.vertices.len());
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if self.arrow_index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        self.arrow_index.insert(name.to_string(), self.arrows.len());
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn stationary(&self, v: usize) -> Path {
        Path::stationary(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn path_of(&self, arrows: &[usize]) -> Result<Path> {
        let (first, rest) = arrows
            .split_first()
            .ok_or_else(|| Error::NotComposable("empty arrow list".into()))?;
        let mut p = self.arrow_path(*first);
        for &a in rest {
            let next = self.arrow_path(a);
            p = p
                .compose(&next)
                .ok_or_else(|| Error::NotComposable(self.fmt_path(&p) + " . " + &self.arrows[a].name))?;
        }
        Ok(p)
    }

    /// Parses a `.`-separated word of arrow names.
    pub fn word(&self, word: &str) -> Result<Path> {
        let ids = word
            .split('.')
            .map(|n| self.arrow_id(n.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.path_of(&ids)
    }

    /// All paths of length at most `max_len`, ordered by length and then
    /// lexicographically by arrow index.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::stationary).collect();
        let mut layer: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            let next: Vec<Path> = if len == 1 {
                (0..self.num_arrows()).map(|a| self.arrow_path(a)).collect()
            } else {
                layer
                    .iter()
                    .flat_map(|p| {
                        self.arrows_from(p.target)
                            .map(move |a| p.extend(a, self.arrows[a].target))
                            .collect::<Vec<_>>()
                    })
                    .collect()
            };
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn fmt_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertices[p.source]);
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn fmt_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in x.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !mag.is_one() {
                let _ = write!(s, "{mag}*");
            }
            s.push_str(&self.fmt_path(p));
        }
        s
    }
}

/// A path of the quiver. The empty arrow sequence denotes the stationary
/// path `e_v` at `source = target = v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Assembles a path from parts the caller knows to be consistent.
    pub(crate) fn from_parts(source: usize, target: usize, arrows: Vec<usize>) -> Path {
        Path {
            source,
            target,
            arrows,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    fn extend(&self, a: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target,
            arrows,
        }
    }

    /// Concatenation, or `None` when `target(self) ≠ source(other)`.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// `self^k` for a cycle; `k = 0` gives the stationary path.
    pub fn power(&self, k: usize) -> Option<Path> {
        if self.source != self.target {
            return if k == 1 { Some(self.clone()) } else { None };
        }
        let mut arrows = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            arrows.extend_from_slice(&self.arrows);
        }
        Some(Path {
            source: self.source,
            target: self.target,
            arrows,
        })
    }
}

impl Ord for Path {
    /// Degree-lexicographic: longer paths are larger, ties broken by arrow
    /// index sequence; stationary paths are ordered by vertex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, Scalar::one())
    }

    pub fn term(p: Path, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(p, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Path, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// The deglex-largest term.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.last_key_value()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Path, Scalar)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(p, d)| (p.clone(), c * d)).collect(),
        }
    }

    /// Bilinear extension of path composition.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, c * d);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize, unit: &AlgebraElement) -> AlgebraElement {
        let mut acc = unit.clone();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Common `(source, target)` of all terms, if the element is parallel.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.source, first.target);
        it.all(|p| (p.source, p.target) == st).then_some(st)
    }

    /// Smallest path length among the terms.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    /// Drops every term longer than `max_len`.
    pub fn truncate(&mut self, max_len: usize) {
        self.terms.retain(|p, _| p.len() <= max_len);
    }
}

impl FromIterator<(Path, Scalar)> for AlgebraElement {
    fn from_iter<I: IntoIterator<Item = (Path, Scalar)>>(iter: I) -> Self {
        let mut x = AlgebraElement::zero();
        for (p, c) in iter {
            x.add_term(p, c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    fn delta() -> Quiver {
        Quiver::new(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("alpha", "1", "2"),
                ("beta", "2", "3"),
                ("gamma", "3", "4"),
                ("sigma", "4", "1"),
                ("delta", "5", "1"),
                ("nu", "3", "5"),
                ("rho", "1", "6"),
                ("omega", "6", "3"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn compose_paths() {
        let q = delta();
        let ab = q.word("alpha").unwrap().compose(&q.word("beta").unwrap()).unwrap();
        assert_eq!(ab, q.word("alpha.beta").unwrap());
        assert_eq!((ab.source(), ab.target()), (0, 2));
        let e1 = Path::stationary(0);
        assert_eq!(e1.compose(&q.word("alpha").unwrap()).unwrap(), q.word("alpha").unwrap());
        assert!(q.word("alpha").unwrap().compose(&q.word("gamma").unwrap()).is_none());
        assert!(matches!(q.word("alpha.gamma"), Err(Error::NotComposable(_))));
    }

    #[test]
    fn multiply_elements() {
        let q = delta();
        let alpha = AlgebraElement::from_path(q.word("alpha").unwrap());
        let beta = AlgebraElement::from_path(q.word("beta").unwrap());
        assert!(alpha.add(&beta).mul(&AlgebraElement::zero()).is_zero());
        let idem = AlgebraElement::from_path(Path::stationary(0))
            .add(&AlgebraElement::from_path(Path::stationary(1)));
        assert_eq!(idem.mul(&alpha), alpha);
        let bg = AlgebraElement::from_path(q.word("beta.gamma").unwrap());
        let sa = AlgebraElement::from_path(q.word("sigma.alpha").unwrap());
        assert_eq!(bg.mul(&sa), AlgebraElement::from_path(q.word("beta.gamma.sigma.alpha").unwrap()));
    }

    #[test]
    fn enumerate_small_quivers() {
        let one = Quiver::new::<&str, &str>(&["1"], &[]).unwrap();
        assert_eq!(one.enumerate_paths(5), vec![Path::stationary(0)]);
        let q = a2();
        let ps = q.enumerate_paths(3);
        assert_eq!(ps.len(), 3);
        assert_eq!(q.fmt_path(&ps[2]), "a");
        assert_eq!(delta().enumerate_paths(1).len(), 14);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let ps = delta().enumerate_paths(8);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }

    /// Brute-force DFS count of paths in the complete acyclic quiver on `n`
    /// vertices (one arrow i -> j for every i < j).
    fn dfs_count(n: usize, v: usize, remaining: usize) -> usize {
        let mut total = 1;
        if remaining == 0 {
            return total;
        }
        for w in v + 1..n {
            total += dfs_count(n, w, remaining - 1);
        }
        total
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn acyclic_path_counts_match_closed_form_and_dfs() {
        for n in 1..=6 {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut arrows = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    arrows.push((format!("a{i}_{j}"), names[i].clone(), names[j].clone()));
                }
            }
            let q = Quiver::new(&names, &arrows).unwrap();
            for len in 0..n {
                let dfs: usize = (0..n).map(|v| dfs_count(n, v, len)).sum();
                // a path of length k is a (k+1)-subset of vertices
                let closed: usize = (0..=len).map(|k| binom(n, k + 1)).sum();
                assert_eq!(q.enumerate_paths(len).len(), dfs);
                assert_eq!(dfs, closed);
            }
        }
    }

    fn elem(q: &Quiver) -> impl Strategy<Value = AlgebraElement> {
        let paths = q.enumerate_paths(3);
        prop::collection::vec((0..paths.len(), -3i64..4), 0..5).prop_map(move |ts| {
            ts.into_iter()
                .map(|(i, c)| (paths[i].clone(), Scalar::from_int(c)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_distributive(
            (x, y, z) in (elem(&delta()), elem(&delta()), elem(&delta()))
        ) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        }
    }
}
