//! From a presentation to a concrete finite-dimensional algebra.
//!
//! Relations are oriented by the degree-lexicographic order (longer paths
//! are larger), completed by resolving overlap ambiguities, and the
//! irreducible paths then form a basis of `KQ/I`. The product of two basis
//! paths is the normal form of their concatenation.

mod truncation;

pub use truncation::{truncated_quotient_dims, verify_by_truncation, TruncationTable};

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Subspace, Vector};
use crate::quiver::{AlgebraElement, Path, Quiver};

/// Default cap on the number of live rules during completion.
pub const DEFAULT_RULE_BUDGET: usize = 10_000;

/// Largest degree cap tried when the cap is raised automatically.
pub const MAX_AUTO_CAP: usize = 64;

/// `lhs → rhs`, where every monomial of `rhs` is smaller than `lhs` and
/// parallel to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Path,
    pub rhs: AlgebraElement,
}

impl RewriteRule {
    pub fn as_element(&self) -> AlgebraElement {
        AlgebraElement::from_path(self.lhs.clone()).sub(&self.rhs)
    }
}

/// Turns each relation `r` into `lhs → rhs` with `lhs` the leading monomial
/// and its coefficient normalised to one.
pub fn orient(field: &FieldSpec, relations: &[AlgebraElement]) -> Result<Vec<RewriteRule>> {
    relations
        .iter()
        .map(|r| {
            let r = embed(field, r)?;
            rule_from(&r)?.ok_or_else(|| Error::MalformedRelation("relation is 0 = 0".into()))
        })
        .collect()
}

fn embed(field: &FieldSpec, x: &AlgebraElement) -> Result<AlgebraElement> {
    x.terms()
        .iter()
        .map(|(p, c)| Ok((p.clone(), field.embed(c)?)))
        .collect()
}

fn rule_from(x: &AlgebraElement) -> Result<Option<RewriteRule>> {
    let Some((lead, c)) = x.leading() else {
        return Ok(None);
    };
    if x.endpoints().is_none() {
        return Err(Error::NonParallelRelation(format!("{x:?}")));
    }
    if lead.is_stationary() {
        return Err(Error::MalformedRelation(
            "leading monomial is a stationary path".into(),
        ));
    }
    let inv = c.inv().map_err(|_| Error::MalformedRelation("zero leading coefficient".into()))?;
    let lhs = lead.clone();
    let mut rhs = x.scale(&-inv);
    rhs.add_term(lhs.clone(), Scalar::one());
    Ok(Some(RewriteRule { lhs, rhs }))
}

/// Splices `prefix · x · suffix` for arrow words around a parallel element.
fn splice(q: &Quiver, prefix: &[usize], x: &AlgebraElement, suffix: &[usize]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (p, c) in x.terms() {
        let source = prefix.first().map_or(p.source(), |&a| q.arrow(a).source);
        let target = suffix.last().map_or(p.target(), |&a| q.arrow(a).target);
        let mut arrows = Vec::with_capacity(prefix.len() + p.len() + suffix.len());
        arrows.extend_from_slice(prefix);
        arrows.extend_from_slice(p.arrows());
        arrows.extend_from_slice(suffix);
        out.add_term(Path::from_parts(source, target, arrows), c.clone());
    }
    out
}

/// Index of rule left-hand sides by arrow word.
#[derive(Clone, Debug, Default)]
struct LhsIndex {
    by_word: HashMap<Vec<usize>, usize>,
    lengths: BTreeMap<usize, usize>,
}

impl LhsIndex {
    fn insert(&mut self, word: Vec<usize>, id: usize) {
        *self.lengths.entry(word.len()).or_default() += 1;
        self.by_word.insert(word, id);
    }

    fn remove(&mut self, word: &[usize]) {
        if self.by_word.remove(word).is_some() {
            let n = self.lengths.get_mut(&word.len()).expect("length tracked");
            *n -= 1;
            if *n == 0 {
                self.lengths.remove(&word.len());
            }
        }
    }

    /// First occurrence `(rule id, start)` of any indexed word inside `w`,
    /// scanning shorter words and earlier positions first.
    fn find(&self, w: &[usize]) -> Option<(usize, usize)> {
        for &len in self.lengths.keys() {
            if len > w.len() {
                break;
            }
            for start in 0..=w.len() - len {
                if let Some(&id) = self.by_word.get(&w[start..start + len]) {
                    return Some((id, start));
                }
            }
        }
        None
    }

    /// Like [`find`](Self::find) but prefers the rightmost occurrence.
    fn find_rightmost(&self, w: &[usize]) -> Option<(usize, usize)> {
        for &len in self.lengths.keys().rev() {
            if len > w.len() {
                continue;
            }
            for start in (0..=w.len() - len).rev() {
                if let Some(&id) = self.by_word.get(&w[start..start + len]) {
                    return Some((id, start));
                }
            }
        }
        None
    }

    /// Whether some indexed word ends at the last position of `w`.
    fn has_suffix(&self, w: &[usize]) -> bool {
        self.lengths
            .keys()
            .any(|&len| len <= w.len() && self.by_word.contains_key(&w[w.len() - len..]))
    }
}

/// Strategy for choosing which redex to rewrite; both must give the same
/// normal form on a confluent system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn reduce_with(
    q: &Quiver,
    rules: &[Option<RewriteRule>],
    index: &LhsIndex,
    x: &AlgebraElement,
    strategy: Strategy,
) -> AlgebraElement {
    let mut work = x.clone();
    let mut out: Vec<(Path, Scalar)> = Vec::new();
    while let Some((p, c)) = work.pop_leading() {
        let hit = match strategy {
            Strategy::Leftmost => index.find(p.arrows()),
            Strategy::Rightmost => index.find_rightmost(p.arrows()),
        };
        match hit {
            Some((id, start)) => {
                let rule = rules[id].as_ref().expect("indexed rule is live");
                let w = p.arrows();
                let end = start + rule.lhs.len();
                let replaced = splice(q, &w[..start], &rule.rhs, &w[end..]);
                for (r, d) in replaced.terms() {
                    work.add_term(r.clone(), &c * d);
                }
            }
            None => out.push((p, c)),
        }
    }
    out.into_iter().collect()
}

/// A completed rewriting system.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    quiver: Quiver,
    rules: Vec<Option<RewriteRule>>,
    index: LhsIndex,
    added: usize,
}

impl RewriteSystem {
    /// Live rules sorted by left-hand side.
    pub fn rules(&self) -> Vec<&RewriteRule> {
        let mut v: Vec<&RewriteRule> = self.rules.iter().flatten().collect();
        v.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        v
    }

    pub fn num_rules(&self) -> usize {
        self.index.by_word.len()
    }

    /// Rules produced by completion beyond the oriented input relations.
    pub fn num_added(&self) -> usize {
        self.added
    }

    pub fn max_lhs_len(&self) -> usize {
        self.index.lengths.keys().next_back().copied().unwrap_or(0)
    }

    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        reduce_with(&self.quiver, &self.rules, &self.index, x, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, x: &AlgebraElement, strategy: Strategy) -> AlgebraElement {
        reduce_with(&self.quiver, &self.rules, &self.index, x, strategy)
    }

    pub fn is_irreducible(&self, p: &Path) -> bool {
        self.index.find(p.arrows()).is_none()
    }

    /// Irreducible paths of length at most `max_len`, in deglex order.
    /// Since irreducibility is inherited by subpaths, a depth-first
    /// extension only needs to test suffixes.
    pub fn irreducible_paths(&self, max_len: usize) -> Vec<Path> {
        let q = &self.quiver;
        let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::stationary).collect();
        let mut layer: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            let mut next = Vec::new();
            let starts: Vec<Path> = if len == 1 {
                (0..q.num_vertices()).map(Path::stationary).collect()
            } else {
                std::mem::take(&mut layer)
            };
            for p in &starts {
                for a in q.arrows_from(p.target()) {
                    let ext = p.compose(&q.arrow_path(a)).expect("composable by construction");
                    if !self.index.has_suffix(ext.arrows()) {
                        next.push(ext);
                    }
                }
            }
            next.sort();
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort();
        out
    }
}

struct Completion<'a> {
    quiver: &'a Quiver,
    rules: Vec<Option<RewriteRule>>,
    index: LhsIndex,
    queue: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
    overlap_cap: usize,
    budget: usize,
}

impl<'a> Completion<'a> {
    fn reduce(&self, x: &AlgebraElement) -> AlgebraElement {
        reduce_with(self.quiver, &self.rules, &self.index, x, Strategy::Leftmost)
    }

    /// Adds the reduced form of `x` as a new rule, retiring rules whose
    /// left-hand side it divides. Returns elements that must be re-added.
    fn add(&mut self, x: &AlgebraElement) -> Result<Vec<AlgebraElement>> {
        let r = self.reduce(x);
        let Some(rule) = rule_from(&r)? else {
            return Ok(Vec::new());
        };
        let word = rule.lhs.arrows().to_vec();
        let mut retired = Vec::new();
        let mut to_retire: Vec<usize> = self
            .index
            .by_word
            .iter()
            .filter(|(w, _)| contains_word(w, &word))
            .map(|(_, &id)| id)
            .collect();
        to_retire.sort_unstable();
        for id in to_retire {
            let old = self.rules[id].take().expect("live rule");
            self.index.remove(old.lhs.arrows());
            retired.push(old.as_element());
        }
        let id = self.rules.len();
        self.rules.push(Some(rule));
        self.index.insert(word, id);
        if self.index.by_word.len() > self.budget {
            return Err(Error::CompletionBudgetExceeded {
                budget: self.budget,
            });
        }
        let mut live: Vec<usize> = self.index.by_word.values().copied().collect();
        live.sort_unstable();
        for other in live {
            self.enqueue_overlaps(id, other);
            if other != id {
                self.enqueue_overlaps(other, id);
            }
        }
        Ok(retired)
    }

    fn enqueue_overlaps(&mut self, i: usize, j: usize) {
        let u = self.rules[i].as_ref().expect("live").lhs.arrows();
        let v = self.rules[j].as_ref().expect("live").lhs.arrows();
        for k in 1..u.len().min(v.len()) {
            let total = u.len() + v.len() - k;
            if total <= self.overlap_cap && u[u.len() - k..] == v[..k] {
                self.queue.push(Reverse((total, i, j, k)));
            }
        }
    }

    fn s_element(&self, i: usize, j: usize, k: usize) -> Option<AlgebraElement> {
        let ri = self.rules[i].as_ref()?;
        let rj = self.rules[j].as_ref()?;
        let u = ri.lhs.arrows();
        let v = rj.lhs.arrows();
        let left = splice(self.quiver, &[], &ri.rhs, &v[k..]);
        let right = splice(self.quiver, &u[..u.len() - k], &rj.rhs, &[]);
        Some(left.sub(&right))
    }

    fn run(mut self, rules: Vec<RewriteRule>) -> Result<RewriteSystem> {
        let mut pending: Vec<AlgebraElement> = rules.iter().map(RewriteRule::as_element).collect();
        pending.reverse();
        let initial = pending.len();
        let mut created = 0usize;
        loop {
            while let Some(x) = pending.pop() {
                let before = self.rules.len();
                let back = self.add(&x)?;
                created += self.rules.len() - before;
                pending.extend(back.into_iter().rev());
            }
            let Some(Reverse((_, i, j, k))) = self.queue.pop() else {
                break;
            };
            if let Some(s) = self.s_element(i, j, k) {
                let s = self.reduce(&s);
                if !s.is_zero() {
                    pending.push(s);
                }
            }
        }
        // bring right-hand sides into normal form
        let ids: Vec<usize> = (0..self.rules.len()).filter(|&i| self.rules[i].is_some()).collect();
        for id in ids {
            let rhs = self.rules[id].as_ref().expect("live").rhs.clone();
            let nf = self.reduce(&rhs);
            self.rules[id].as_mut().expect("live").rhs = nf;
        }
        Ok(RewriteSystem {
            quiver: self.quiver.clone(),
            rules: self.rules,
            index: self.index,
            added: created.saturating_sub(initial),
        })
    }
}

fn contains_word(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Resolves all overlap ambiguities whose overlap word has length at most
/// `2 * degree_cap + 2`; left-hand sides dividing others are inter-reduced.
pub fn complete(
    quiver: &Quiver,
    rules: Vec<RewriteRule>,
    degree_cap: usize,
    budget: usize,
) -> Result<RewriteSystem> {
    let c = Completion {
        quiver,
        rules: Vec::new(),
        index: LhsIndex::default(),
        queue: BinaryHeap::new(),
        overlap_cap: 2 * degree_cap + 2,
        budget,
    };
    c.run(rules)
}

/// `KQ/I` with a normal-form basis and structure constants.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    quiver: Quiver,
    field: FieldSpec,
    relations: Vec<AlgebraElement>,
    system: RewriteSystem,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    structure: FiniteAlgebra,
    degree_cap: usize,
    loewy_length: usize,
}

impl QuotientAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn relations(&self) -> &[AlgebraElement] {
        &self.relations
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn structure(&self) -> &FiniteAlgebra {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Smallest `k` with every path of length `k` reducing to zero.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        self.system.normal_form(x)
    }

    /// Coordinates of `x` on the normal-form basis.
    pub fn to_vector(&self, x: &AlgebraElement) -> Vector {
        let nf = self.normal_form(x);
        let mut v = crate::linalg::zero_vector(self.dim());
        for (p, c) in nf.terms() {
            let i = self.index[p];
            v[i] = match self.structure.modulus() {
                Some(q) => c.to_residue(q).expect("coefficient defined mod p"),
                None => c.clone(),
            };
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> AlgebraElement {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.basis[i].clone(), c.clone()))
            .collect()
    }

    pub fn word(&self, w: &str) -> Result<AlgebraElement> {
        Ok(AlgebraElement::from_path(self.quiver.word(w)?))
    }

    pub fn arrow_vector(&self, a: usize) -> Vector {
        self.to_vector(&AlgebraElement::from_path(self.quiver.arrow_path(a)))
    }
}

/// Builds `KQ/I` with the given degree cap.
///
/// The finiteness certificate has two parts: no irreducible path has length
/// `degree_cap + 1`, and the powers of the arrow ideal computed through the
/// multiplication table vanish at `degree_cap + 1`.
pub fn build_algebra(
    quiver: &Quiver,
    field: &FieldSpec,
    relations: &[AlgebraElement],
    degree_cap: usize,
    budget: usize,
) -> Result<QuotientAlgebra> {
    let max_rel = relations.iter().filter_map(AlgebraElement::max_degree).max().unwrap_or(0);
    if degree_cap < max_rel {
        return Err(Error::InvalidParams(format!(
            "degree cap {degree_cap} is below the relation degree {max_rel}"
        )));
    }
    let rules = orient(field, relations)?;
    let system = complete(quiver, rules, degree_cap, budget)?;
    let basis = system.irreducible_paths(degree_cap + 1);
    if let Some(long) = basis.iter().find(|p| p.len() > degree_cap) {
        return Err(Error::NoFiniteCertificate {
            cap: degree_cap,
            witness: quiver.fmt_path(long),
        });
    }
    debug_assert!(system.max_lhs_len() <= degree_cap + 1);
    let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = basis.len();

    let mut table = vec![vec![Vec::new(); n]; n];
    for (u, pu) in basis.iter().enumerate() {
        for (v, pv) in basis.iter().enumerate() {
            let Some(prod) = pu.compose(pv) else { continue };
            let nf = system.normal_form(&AlgebraElement::from_path(prod));
            table[u][v] = nf.terms().iter().map(|(p, c)| (index[p], c.clone())).collect();
        }
    }
    let labels = basis.iter().map(|p| quiver.fmt_path(p)).collect();
    let blocks = basis.iter().map(|p| (p.source(), p.target())).collect();
    let idempotents = (0..quiver.num_vertices())
        .map(|v| crate::linalg::unit_vector(n, index[&Path::stationary(v)]))
        .collect();
    let modulus = match field.kind() {
        crate::field::FieldKind::PrimeField(p) => Some(p),
        crate::field::FieldKind::Rationals => None,
    };
    let structure = FiniteAlgebra::new(quiver.num_vertices(), labels, blocks, idempotents, table, modulus);

    // powers of the arrow ideal
    let arrows: Vec<Vector> = (0..quiver.num_arrows())
        .map(|a| {
            let nf = system.normal_form(&AlgebraElement::from_path(quiver.arrow_path(a)));
            let mut v = crate::linalg::zero_vector(n);
            for (p, c) in nf.terms() {
                v[index[p]] = c.clone();
            }
            v
        })
        .collect();
    let mut power = Subspace::spanned_by(n, arrows.iter().cloned());
    let mut loewy = 1;
    while power.dim() > 0 {
        if loewy > degree_cap {
            let witness = structure.fmt_vector(&power.rows()[0]);
            return Err(Error::NoFiniteCertificate {
                cap: degree_cap,
                witness,
            });
        }
        let mut next = Subspace::new(n);
        for row in power.rows() {
            for a in &arrows {
                next.insert(structure.mul(row, a));
            }
        }
        power = next;
        loewy += 1;
    }

    Ok(QuotientAlgebra {
        quiver: quiver.clone(),
        field: field.clone(),
        relations: relations
            .iter()
            .map(|r| embed(field, r))
            .collect::<Result<Vec<_>>>()?,
        system,
        basis,
        index,
        structure,
        degree_cap,
        loewy_length: loewy,
    })
}

/// [`build_algebra`], raising the cap by two on a missing certificate.
pub fn build_algebra_auto(
    quiver: &Quiver,
    field: &FieldSpec,
    relations: &[AlgebraElement],
    degree_cap: usize,
    budget: usize,
) -> Result<QuotientAlgebra> {
    let mut cap = degree_cap;
    loop {
        match build_algebra(quiver, field, relations, cap, budget) {
            Err(Error::NoFiniteCertificate { .. }) if cap + 2 <= MAX_AUTO_CAP => cap += 2,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rationals(1).unwrap()
    }

    #[test]
    fn zero_relations_are_already_complete() {
        let qv = two_cycle();
        let rels: Vec<AlgebraElement> = ["a.b", "b.a"]
            .iter()
            .map(|w| AlgebraElement::from_path(qv.word(w).unwrap()))
            .collect();
        let rules = orient(&q(), &rels).unwrap();
        let sys = complete(&qv, rules.clone(), 4, DEFAULT_RULE_BUDGET).unwrap();
        assert_eq!(sys.num_rules(), 2);
        assert_eq!(sys.num_added(), 0);
        let a = build_algebra(&qv, &q(), &rels, 4, DEFAULT_RULE_BUDGET).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.loewy_length(), 2);
    }

    #[test]
    fn path_algebra_of_a2() {
        let qv = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = build_algebra(&qv, &q(), &[], 2, DEFAULT_RULE_BUDGET).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn zero_relation_is_rejected() {
        let err = orient(&q(), &[AlgebraElement::zero()]).unwrap_err();
        assert!(matches!(err, Error::MalformedRelation(_)));
    }

    #[test]
    fn stationary_leading_term_is_rejected() {
        let e = AlgebraElement::from_path(Path::stationary(0));
        assert!(matches!(orient(&q(), &[e]), Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn orientation_normalises_the_leading_coefficient() {
        let qv = two_cycle();
        let ab = qv.word("a.b").unwrap();
        let abab = qv.word("a.b.a.b").unwrap();
        let r: AlgebraElement = [
            (abab.clone(), Scalar::from_int(2)),
            (ab.clone(), Scalar::from_int(-1)),
        ]
        .into_iter()
        .collect();
        let rule = orient(&q(), &[r]).unwrap().remove(0);
        assert_eq!(rule.lhs, abab);
        assert_eq!(rule.rhs, AlgebraElement::term(ab, Scalar::ratio(1, 2).unwrap()));
    }

    #[test]
    fn nilpotent_cycle_dimensions() {
        let qv = two_cycle();
        let r = AlgebraElement::from_path(qv.word("a.b.a.b.a.b").unwrap());
        let a = build_algebra(&qv, &q(), &[r.clone()], 6, DEFAULT_RULE_BUDGET).unwrap();
        assert_eq!(a.dim(), 13);
        assert_eq!(a.loewy_length(), 7);
        let r2 = AlgebraElement::from_path(qv.word("b.a.b.a.b.a").unwrap());
        let a = build_algebra(&qv, &q(), &[r, r2], 6, DEFAULT_RULE_BUDGET).unwrap();
        assert_eq!(a.dim(), 12);
        assert_eq!(a.loewy_length(), 6);
    }

    #[test]
    fn infinite_algebra_has_no_certificate() {
        let qv = Quiver::new(&["1"], &[("a", "1", "1"), ("b", "1", "1")]).unwrap();
        let r = AlgebraElement::from_path(qv.word("a.a").unwrap());
        let err = build_algebra(&qv, &q(), &[r], 4, DEFAULT_RULE_BUDGET).unwrap_err();
        assert!(matches!(err, Error::NoFiniteCertificate { cap: 4, .. }));
    }

    #[test]
    fn budget_is_enforced() {
        let qv = two_cycle();
        let r = AlgebraElement::from_path(qv.word("a.b.a.b").unwrap());
        let err = complete(&qv, orient(&q(), &[r.clone(), r]).unwrap(), 4, 0).unwrap_err();
        assert_eq!(err, Error::CompletionBudgetExceeded { budget: 0 });
    }
}
