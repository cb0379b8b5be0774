//! Finite-dimensional algebras given by a basis adapted to a complete set of
//! orthogonal idempotents and a table of structure constants.

use std::collections::BTreeSet;

use crate::field::Scalar;
use crate::linalg::{axpy, zero_vector, Subspace, Vector};

pub type SparseVector = Vec<(usize, Scalar)>;

/// An algebra `A = ⊕ e_i A e_j` with basis element `u` living in the block
/// `blocks[u] = (i, j)`. Products are read from `table[u][v]`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    num_vertices: usize,
    labels: Vec<String>,
    blocks: Vec<(usize, usize)>,
    idempotents: Vec<Vector>,
    table: Vec<Vec<SparseVector>>,
    modulus: Option<u64>,
}

impl FiniteAlgebra {
    /// With `modulus = Some(p)` every structure constant is moved into
    /// `F_p`, so that later arithmetic never silently stays rational.
    pub fn new(
        num_vertices: usize,
        labels: Vec<String>,
        blocks: Vec<(usize, usize)>,
        mut idempotents: Vec<Vector>,
        mut table: Vec<Vec<SparseVector>>,
        modulus: Option<u64>,
    ) -> Self {
        let n = labels.len();
        assert_eq!(blocks.len(), n);
        assert_eq!(table.len(), n);
        assert_eq!(idempotents.len(), num_vertices);
        if let Some(p) = modulus {
            let conv = |c: &Scalar| c.to_residue(p).expect("structure constant defined mod p");
            for e in &mut idempotents {
                for c in e.iter_mut() {
                    *c = conv(c);
                }
            }
            for row in &mut table {
                for entry in row.iter_mut() {
                    *entry = entry
                        .iter()
                        .map(|(w, c)| (*w, conv(c)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                }
            }
        }
        FiniteAlgebra {
            num_vertices,
            labels,
            blocks,
            idempotents,
            table,
            modulus,
        }
    }

    /// The characteristic when the ground field is `F_p`.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn block(&self, u: usize) -> (usize, usize) {
        self.blocks[u]
    }

    pub fn idempotent(&self, i: usize) -> &Vector {
        &self.idempotents[i]
    }

    pub fn unit(&self) -> Vector {
        let mut one = zero_vector(self.dim());
        for e in &self.idempotents {
            axpy(&mut one, &Scalar::one(), e);
        }
        one
    }

    /// Basis indices spanning `e_i A e_j`.
    pub fn block_basis(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&u| self.blocks[u] == (i, j)).collect()
    }

    /// Basis indices spanning `e_i A`.
    pub fn row_basis(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&u| self.blocks[u].0 == i).collect()
    }

    pub fn product(&self, u: usize, v: usize) -> &[(usize, Scalar)] {
        &self.table[u][v]
    }

    pub fn basis_vector(&self, u: usize) -> Vector {
        crate::linalg::unit_vector(self.dim(), u)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim());
        let ys: Vec<usize> = (0..y.len()).filter(|&v| !y[v].is_zero()).collect();
        for (u, xu) in x.iter().enumerate() {
            if xu.is_zero() {
                continue;
            }
            for &v in &ys {
                if self.blocks[u].1 != self.blocks[v].0 {
                    continue;
                }
                let c = xu * &y[v];
                for (w, d) in &self.table[u][v] {
                    out[*w] += &(&c * d);
                }
            }
        }
        out
    }

    /// `dim e_i A e_j`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let mut c = vec![vec![0; self.num_vertices]; self.num_vertices];
        for &(i, j) in &self.blocks {
            c[i][j] += 1;
        }
        c
    }

    /// Span of all products of `k` generators.
    pub fn power_of(&self, generators: &[Vector], k: usize) -> Subspace {
        let mut layer = Subspace::spanned_by(self.dim(), generators.iter().cloned());
        for _ in 1..k {
            let mut next = Subspace::new(self.dim());
            for row in layer.rows() {
                for g in generators {
                    next.insert(self.mul(row, g));
                }
            }
            layer = next;
        }
        layer
    }

    /// Basis indices other than those of the vertex idempotents.
    pub fn non_idempotent_basis(&self) -> Vec<usize> {
        let idem: BTreeSet<usize> = self
            .idempotents
            .iter()
            .filter_map(|e| {
                let nz: Vec<usize> = (0..e.len()).filter(|&u| !e[u].is_zero()).collect();
                (nz.len() == 1 && e[nz[0]].is_one()).then_some(nz[0])
            })
            .collect();
        (0..self.dim()).filter(|u| !idem.contains(u)).collect()
    }

    pub fn fmt_vector(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(u, c)| {
                if c.is_one() {
                    self.labels[u].clone()
                } else {
                    format!("{c}*{}", self.labels[u])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Checks associativity on all triples of basis elements.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for u in 0..n {
            for v in 0..n {
                if self.blocks[u].1 != self.blocks[v].0 {
                    continue;
                }
                let uv = self.mul(&self.basis_vector(u), &self.basis_vector(v));
                for w in 0..n {
                    if self.blocks[v].1 != self.blocks[w].0 {
                        continue;
                    }
                    let vw = self.mul(&self.basis_vector(v), &self.basis_vector(w));
                    let left = self.mul(&uv, &self.basis_vector(w));
                    let right = self.mul(&self.basis_vector(u), &vw);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}
