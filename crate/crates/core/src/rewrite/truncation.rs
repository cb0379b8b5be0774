//! Independent dimension count for `KQ/I` by linear algebra on truncated
//! path spaces, without any rewriting.
//!
//! Paths longer than the truncation degree `L` are set to zero and the
//! ideal generated by the relations is closed under multiplication by
//! arrows on both sides. Monomials found in the ideal are tracked
//! separately so that their extensions never have to be enumerated.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::quiver::{AlgebraElement, Path, Quiver};

/// Block dimensions `dim e_i (KQ/(I + KQ_{>L})) e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationTable {
    pub degree: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl TruncationTable {
    pub fn total(&self) -> usize {
        self.blocks.iter().flatten().sum()
    }
}

struct ZeroWords {
    words: HashSet<Vec<usize>>,
    lengths: BTreeSet<usize>,
}

impl ZeroWords {
    fn contains_subword(&self, w: &[usize]) -> bool {
        for &len in &self.lengths {
            if len > w.len() {
                break;
            }
            if w.windows(len).any(|s| self.words.contains(s)) {
                return true;
            }
        }
        false
    }

    fn has_suffix(&self, w: &[usize]) -> bool {
        self.lengths
            .iter()
            .any(|&len| len <= w.len() && self.words.contains(&w[w.len() - len..]))
    }
}

/// Fully reduced echelon basis of a space of parallel combinations of paths,
/// keyed by pivot (the largest path of each row).
struct Closure<'a> {
    quiver: &'a Quiver,
    degree: usize,
    rows: HashMap<Path, AlgebraElement>,
    /// non-pivot path -> pivots of rows in which it occurs
    occurs: HashMap<Path, BTreeSet<Path>>,
    zero: ZeroWords,
    queue: BinaryHeap<Reverse<(usize, usize)>>,
    pending: Vec<Option<AlgebraElement>>,
}

impl<'a> Closure<'a> {
    fn push(&mut self, x: AlgebraElement) {
        let Some(deg) = x.max_degree() else { return };
        let id = self.pending.len();
        self.pending.push(Some(x));
        self.queue.push(Reverse((deg, id)));
    }

    fn clean(&self, x: &AlgebraElement) -> AlgebraElement {
        x.terms()
            .iter()
            .filter(|(p, _)| p.len() <= self.degree && !self.zero.contains_subword(p.arrows()))
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect()
    }

    fn unindex(&mut self, pivot: &Path, row: &AlgebraElement) {
        for p in row.terms().keys() {
            if p != pivot {
                if let Some(s) = self.occurs.get_mut(p) {
                    s.remove(pivot);
                    if s.is_empty() {
                        self.occurs.remove(p);
                    }
                }
            }
        }
    }

    fn index(&mut self, pivot: &Path, row: &AlgebraElement) {
        for p in row.terms().keys() {
            if p != pivot {
                self.occurs.entry(p.clone()).or_default().insert(pivot.clone());
            }
        }
    }

    fn insert(&mut self, x: &AlgebraElement) -> Result<()> {
        let x = self.clean(x);
        let mut r = x.clone();
        for (p, c) in x.terms() {
            if let Some(row) = self.rows.get(p) {
                r = r.sub(&row.scale(c));
            }
        }
        let Some((lead, c)) = r.leading() else {
            return Ok(());
        };
        if lead.is_stationary() {
            return Err(Error::MalformedRelation(
                "a stationary path lies in the ideal".into(),
            ));
        }
        let pivot = lead.clone();
        let row = r.scale(&c.inv()?);

        let mut singles = Vec::new();
        if let Some(holders) = self.occurs.remove(&pivot) {
            for h in holders {
                let old = self.rows.remove(&h).expect("indexed row");
                self.unindex(&h, &old);
                let coef = old.coefficient(&pivot);
                let new = old.sub(&row.scale(&coef));
                self.index(&h, &new);
                if new.num_terms() == 1 {
                    singles.push(h.clone());
                }
                self.rows.insert(h, new);
            }
        }
        self.index(&pivot, &row);
        if row.num_terms() == 1 {
            singles.push(pivot.clone());
        }
        self.rows.insert(pivot, row.clone());

        self.enqueue_products(&row);
        for s in singles {
            self.add_zero_word(s)?;
        }
        Ok(())
    }

    fn enqueue_products(&mut self, row: &AlgebraElement) {
        let Some((s, t)) = row.endpoints() else { return };
        if row.low_degree().unwrap_or(0) >= self.degree {
            return;
        }
        let q = self.quiver;
        let mut products = Vec::new();
        for a in q.arrows_into(s) {
            let left = AlgebraElement::from_path(q.arrow_path(a)).mul(row);
            products.push(left);
        }
        for a in q.arrows_from(t) {
            let right = row.mul(&AlgebraElement::from_path(q.arrow_path(a)));
            products.push(right);
        }
        for mut p in products {
            p.truncate(self.degree);
            let p = self.clean(&p);
            if !p.is_zero() {
                self.push(p);
            }
        }
    }

    /// Records a monomial of the ideal and purges it, and everything
    /// containing it, from the stored rows.
    fn add_zero_word(&mut self, path: Path) -> Result<()> {
        let mut work = vec![path];
        while let Some(z) = work.pop() {
            if self.zero.contains_subword(z.arrows()) {
                continue;
            }
            self.zero.lengths.insert(z.len());
            self.zero.words.insert(z.arrows().to_vec());

            // rows whose pivot contains the new word
            let dead: Vec<Path> = self
                .rows
                .keys()
                .filter(|p| contains(p.arrows(), z.arrows()))
                .cloned()
                .collect();
            let mut reinsert = Vec::new();
            for p in dead {
                let row = self.rows.remove(&p).expect("row");
                self.unindex(&p, &row);
                let mut rest = row.clone();
                rest.add_term(p.clone(), -Scalar::one());
                if !rest.is_zero() {
                    reinsert.push(rest);
                }
            }
            // non-pivot occurrences
            let hit: Vec<Path> = self
                .occurs
                .keys()
                .filter(|p| contains(p.arrows(), z.arrows()))
                .cloned()
                .collect();
            for p in hit {
                let holders = self.occurs.remove(&p).unwrap_or_default();
                for h in holders {
                    let row = self.rows.get_mut(&h).expect("row");
                    let c = row.coefficient(&p);
                    row.add_term(p.clone(), -c);
                    if row.num_terms() == 1 {
                        work.push(h.clone());
                    }
                }
            }
            for x in reinsert {
                self.insert(&x)?;
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        while let Some(Reverse((_, id))) = self.queue.pop() {
            let x = self.pending[id].take().expect("queued once");
            self.insert(&x)?;
        }
        Ok(())
    }

    fn quotient_dims(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.num_vertices();
        let mut dims = vec![vec![0usize; n]; n];
        let mut stack: Vec<Path> = (0..n).map(Path::stationary).collect();
        while let Some(p) = stack.pop() {
            dims[p.source()][p.target()] += 1;
            if p.len() == self.degree {
                continue;
            }
            for a in self.quiver.arrows_from(p.target()) {
                let ext = p.compose(&self.quiver.arrow_path(a)).expect("composable");
                if !self.zero.has_suffix(ext.arrows()) {
                    stack.push(ext);
                }
            }
        }
        for pivot in self.rows.keys() {
            dims[pivot.source()][pivot.target()] -= 1;
        }
        dims
    }
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Block dimensions of `KQ / (I + paths of length > degree)`.
pub fn truncated_quotient_dims(
    quiver: &Quiver,
    relations: &[AlgebraElement],
    degree: usize,
) -> Result<TruncationTable> {
    let mut c = Closure {
        quiver,
        degree,
        rows: HashMap::new(),
        occurs: HashMap::new(),
        zero: ZeroWords {
            words: HashSet::new(),
            lengths: BTreeSet::new(),
        },
        queue: BinaryHeap::new(),
        pending: Vec::new(),
    };
    for r in relations {
        if r.endpoints().is_none() {
            return Err(Error::NonParallelRelation(quiver.fmt_element(r)));
        }
        let mut r = r.clone();
        r.truncate(degree);
        c.push(r);
    }
    c.run()?;
    Ok(TruncationTable {
        degree,
        blocks: c.quotient_dims(),
    })
}

/// Computes the truncated quotient at `degree` and `degree + 2`; agreement
/// shows that paths beyond `degree` already lie in the ideal.
pub fn verify_by_truncation(
    quiver: &Quiver,
    relations: &[AlgebraElement],
    degree: usize,
) -> Result<TruncationTable> {
    let low = truncated_quotient_dims(quiver, relations, degree)?;
    let high = truncated_quotient_dims(quiver, relations, degree + 2)?;
    if low.blocks != high.blocks {
        return Err(Error::StabilizationFailure {
            low: degree,
            high: degree + 2,
        });
    }
    Ok(low)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_cycle() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let rels: Vec<AlgebraElement> = ["a.b.a", "b.a.b"]
            .iter()
            .map(|w| AlgebraElement::from_path(q.word(w).unwrap()))
            .collect();
        let t = verify_by_truncation(&q, &rels, 4).unwrap();
        assert_eq!(t.blocks, vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(t.total(), 6);
    }

    #[test]
    fn free_cycle_does_not_stabilise() {
        let q = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        let err = verify_by_truncation(&q, &[], 3).unwrap_err();
        assert_eq!(err, Error::StabilizationFailure { low: 3, high: 5 });
    }

    #[test]
    fn commutativity_square() {
        // a.b = c.d in a commuting square has dimension 4 + 4 + 1 = 9
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let r = AlgebraElement::from_path(q.word("a.b").unwrap())
            .sub(&AlgebraElement::from_path(q.word("c.d").unwrap()));
        let t = verify_by_truncation(&q, &[r], 3).unwrap();
        assert_eq!(t.total(), 9);
    }
}
