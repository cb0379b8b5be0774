//! Structural invariants: Cartan matrices, identity checks, socles, radical
//! layers and symmetrizing forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::field::Scalar;
use crate::linalg::{axpy, dot, zero_vector, Matrix, Subspace, Vector};
use crate::quiver::AlgebraElement;
use crate::rewrite::QuotientAlgebra;

/// Number of seeded random candidates tried before the deterministic sweep.
pub const RANDOM_TRIALS: usize = 20;

/// Upper bound on candidates examined by the deterministic sweeps.
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// `C[i][j] = dim e_i A e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CartanMatrix(pub Vec<Vec<usize>>);

impl CartanMatrix {
    pub fn total(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.0.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let n = self.0.len();
        (0..n).map(|j| self.0.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.0[i][j]
    }
}

pub fn cartan(a: &FiniteAlgebra) -> CartanMatrix {
    CartanMatrix(a.cartan())
}

pub fn dimension(a: &QuotientAlgebra) -> usize {
    a.dim()
}

/// Outcome of checking `lhs = rhs`; the residual is the normal form of
/// `lhs − rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub residual: AlgebraElement,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_identity(a: &QuotientAlgebra, lhs: &AlgebraElement, rhs: &AlgebraElement) -> IdentityCheck {
    IdentityCheck {
        residual: a.normal_form(&lhs.sub(rhs)),
    }
}

/// Right socle of each `e_i A`: the `x` with `x · g = 0` for all radical
/// generators `g`. Returns a basis per vertex.
pub fn socle_bases(a: &FiniteAlgebra, radical_generators: &[Vector]) -> Vec<Vec<Vector>> {
    (0..a.num_vertices())
        .map(|i| {
            let idx = a.row_basis(i);
            let width = radical_generators.len() * a.dim();
            let rows: Vec<Vector> = idx
                .iter()
                .map(|&u| {
                    let bu = a.basis_vector(u);
                    let mut row = Vec::with_capacity(width);
                    for g in radical_generators {
                        row.extend(a.mul(&bu, g));
                    }
                    row
                })
                .collect();
            let m = Matrix::from_rows(rows, width);
            m.left_kernel()
                .into_iter()
                .map(|coeffs| {
                    let mut x = zero_vector(a.dim());
                    for (c, &u) in coeffs.iter().zip(&idx) {
                        x[u] = c.clone();
                    }
                    x
                })
                .collect()
        })
        .collect()
}

pub fn socle_dims(a: &FiniteAlgebra, radical_generators: &[Vector]) -> Vec<usize> {
    socle_bases(a, radical_generators).iter().map(Vec::len).collect()
}

/// Arrow vectors of a path algebra quotient, which generate its radical.
pub fn arrow_generators(a: &QuotientAlgebra) -> Vec<Vector> {
    (0..a.quiver().num_arrows()).map(|x| a.arrow_vector(x)).collect()
}

/// Spans of all products of at least one, respectively at least two,
/// generators.
pub fn radical_and_square(a: &FiniteAlgebra, generators: &[Vector]) -> (Subspace, Subspace) {
    let n = a.dim();
    let mut rad = Subspace::spanned_by(n, generators.iter().cloned());
    let mut sq = Subspace::new(n);
    let mut layer = rad.clone();
    // products of more than `n` radical elements vanish
    for _ in 0..=n {
        let mut next = Subspace::new(n);
        for row in layer.rows() {
            for g in generators {
                next.insert(a.mul(row, g));
            }
        }
        if next.dim() == 0 {
            break;
        }
        for row in next.rows() {
            sq.insert(row.clone());
            rad.insert(row.clone());
        }
        layer = next;
    }
    (rad, sq)
}

/// `dim e_i (rad / rad²) e_j`, the number of arrows `i → j` in the quiver of
/// the algebra, for block-homogeneous generators.
pub fn arrow_matrix(a: &FiniteAlgebra, generators: &[Vector]) -> Vec<Vec<usize>> {
    let (rad, sq) = radical_and_square(a, generators);
    let n = a.num_vertices();
    let mut out = vec![vec![0usize; n]; n];
    for &p in rad.pivots() {
        let (i, j) = a.block(p);
        out[i][j] += 1;
    }
    for &p in sq.pivots() {
        let (i, j) = a.block(p);
        out[i][j] -= 1;
    }
    out
}

/// A linear functional `φ` with `φ(xy) = φ(yx)` whose Gram matrix
/// `G[u][v] = φ(b_u b_v)` is invertible.
#[derive(Clone, Debug)]
pub struct SymmetrizingForm {
    pub functional: Vector,
    pub gram_rank: usize,
    /// candidates examined before this one was accepted
    pub candidates: usize,
}

impl SymmetrizingForm {
    pub fn value(&self, x: &[Scalar]) -> Scalar {
        dot(&self.functional, x)
    }

    /// Re-checks `φ(xy) = φ(yx)` on random elements.
    pub fn check_random_pairs(&self, a: &FiniteAlgebra, pairs: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = a.dim();
        (0..pairs).all(|_| {
            let mut x = zero_vector(n);
            let mut y = zero_vector(n);
            for u in 0..n {
                x[u] = Scalar::from_int(rng.gen_range(-3..=3));
                y[u] = Scalar::from_int(rng.gen_range(-3..=3));
            }
            self.value(&a.mul(&x, &y)) == self.value(&a.mul(&y, &x))
        })
    }
}

/// Basis of the functionals vanishing on all commutators `[b_u, b_v]`.
pub fn trace_functionals(a: &FiniteAlgebra) -> Vec<Vector> {
    let n = a.dim();
    let mut comm = Subspace::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (bu, bv) = (a.block(u), a.block(v));
            if bu.1 != bv.0 && bv.1 != bu.0 {
                continue;
            }
            let x = a.basis_vector(u);
            let y = a.basis_vector(v);
            let mut c = a.mul(&x, &y);
            axpy(&mut c, &Scalar::from_int(-1), &a.mul(&y, &x));
            comm.insert(c);
        }
    }
    if comm.dim() == 0 {
        return (0..n).map(|u| a.basis_vector(u)).collect();
    }
    Matrix::from_rows(comm.into_rows(), n).kernel()
}

fn gram_rank(a: &FiniteAlgebra, phi: &[Scalar]) -> usize {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n);
    for u in 0..n {
        let mut row = zero_vector(n);
        for (v, slot) in row.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for (w, c) in a.product(u, v) {
                if !phi[*w].is_zero() {
                    acc += &(c * &phi[*w]);
                }
            }
            *slot = acc;
        }
        rows.push(row);
    }
    Matrix::from_rows(rows, n).rank()
}

fn combine(basis: &[Vector], coeffs: &[Scalar], n: usize) -> Vector {
    let mut phi = zero_vector(n);
    for (c, b) in coeffs.iter().zip(basis) {
        axpy(&mut phi, c, b);
    }
    phi
}

/// Seeded random trials, then a sweep over coefficient vectors with entries
/// in `{0, ±1, ±2}`. `None` is inconclusive, not a proof of non-symmetry.
pub fn find_symmetrizing_form(a: &FiniteAlgebra, seed: u64, cap: usize) -> Option<SymmetrizingForm> {
    let n = a.dim();
    let basis = trace_functionals(a);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = 0usize;
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| Scalar::from_int(rng.gen_range(-9..=9)))
            .collect();
        tried += 1;
        let phi = combine(&basis, &coeffs, n);
        if gram_rank(a, &phi) == n {
            return Some(SymmetrizingForm {
                functional: phi,
                gram_rank: n,
                candidates: tried,
            });
        }
    }
    const GRID: [i64; 5] = [0, 1, -1, 2, -2];
    let k = basis.len();
    let mut digits = vec![0usize; k];
    loop {
        // advance odometer; the all-zero vector is skipped
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            digits[pos] += 1;
            if digits[pos] < GRID.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        tried += 1;
        if tried > cap {
            return None;
        }
        let coeffs: Vec<Scalar> = digits.iter().map(|&d| Scalar::from_int(GRID[d])).collect();
        let phi = combine(&basis, &coeffs, n);
        if gram_rank(a, &phi) == n {
            return Some(SymmetrizingForm {
                functional: phi,
                gram_rank: n,
                candidates: tried,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::quiver::Quiver;
    use crate::rewrite::{build_algebra, DEFAULT_RULE_BUDGET};

    fn q() -> FieldSpec {
        FieldSpec::rationals(1).unwrap()
    }

    #[test]
    fn a2_is_not_certified_symmetric() {
        let qv = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = build_algebra(&qv, &q(), &[], 2, DEFAULT_RULE_BUDGET).unwrap();
        assert!(find_symmetrizing_form(a.structure(), 1, DEFAULT_SEARCH_CAP).is_none());
        assert_eq!(cartan(a.structure()).0, vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn semisimple_algebra() {
        let qv = Quiver::new(&["1", "2", "3"], &[] as &[(&str, &str, &str)]).unwrap();
        let a = build_algebra(&qv, &q(), &[], 1, DEFAULT_RULE_BUDGET).unwrap();
        let c = cartan(a.structure());
        assert_eq!(c.0, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(socle_dims(a.structure(), &[]), vec![1, 1, 1]);
        let form = find_symmetrizing_form(a.structure(), 0, 100).unwrap();
        assert_eq!(form.gram_rank, 3);
    }

    #[test]
    fn truncated_polynomial_ring_is_symmetric() {
        let qv = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let r = AlgebraElement::from_path(qv.word("x.x.x").unwrap());
        let a = build_algebra(&qv, &q(), &[r], 3, DEFAULT_RULE_BUDGET).unwrap();
        let form = find_symmetrizing_form(a.structure(), 3, 100).unwrap();
        assert!(form.check_random_pairs(a.structure(), 50, 1));
        let gens = arrow_generators(&a);
        assert_eq!(socle_dims(a.structure(), &gens), vec![1]);
        assert_eq!(arrow_matrix(a.structure(), &gens), vec![vec![1]]);
    }
}
