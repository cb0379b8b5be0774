//! Right modules as quiver representations.
//!
//! Vectors are rows: an arrow `a: i → j` acts by a `dim M_i × dim M_j`
//! matrix, so a path `a.b` acts by `M_a · M_b`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{zero_vector, Matrix, Subspace, Vector};
use crate::quiver::{AlgebraElement, Path};
use crate::rewrite::QuotientAlgebra;

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes and that every defining relation acts as zero.
    pub fn new(a: &QuotientAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = a.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(Error::InvalidParams("representation shape does not match the quiver".into()));
        }
        for (x, m) in maps.iter().enumerate() {
            let arr = q.arrow(x);
            if m.nrows() != dims[arr.source] || m.ncols() != dims[arr.target] {
                return Err(Error::InvalidParams(format!("matrix of arrow {} has the wrong shape", arr.name)));
            }
        }
        let rep = Representation { dims, maps };
        for r in a.relations() {
            if !rep.act_element(r).map_or(true, |m| m.is_zero()) {
                return Err(Error::RelationViolated(q.fmt_element(r)));
            }
        }
        Ok(rep)
    }

    pub fn zero(a: &QuotientAlgebra) -> Self {
        let q = a.quiver();
        Representation {
            dims: vec![0; q.num_vertices()],
            maps: (0..q.num_arrows()).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Matrix of a path; stationary paths act as identities.
    pub fn act_path(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.source()]);
        for &a in p.arrows() {
            m = m.mul(&self.maps[a]);
        }
        m
    }

    /// Matrix of a parallel combination of paths; `None` for zero.
    pub fn act_element(&self, x: &AlgebraElement) -> Option<Matrix> {
        let (s, t) = x.endpoints()?;
        let mut out = Matrix::zeros(self.dims[s], self.dims[t]);
        for (p, c) in x.terms() {
            out = out.add(&self.act_path(p).scale(c));
        }
        Some(out)
    }

    /// Subspace of `M_v` spanned by images of incoming arrows.
    fn radical_part(&self, a: &QuotientAlgebra, v: usize) -> Subspace {
        let mut s = Subspace::new(self.dims[v]);
        for x in a.quiver().arrows_into(v) {
            for row in self.maps[x].rows() {
                s.insert(row.to_vec());
            }
        }
        s
    }

    /// `dim (M / M rad A)` per vertex.
    pub fn top_dims(&self, a: &QuotientAlgebra) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| self.dims[v] - self.radical_part(a, v).dim())
            .collect()
    }
}

/// `e_i A` with arrows acting by right multiplication.
pub fn projective(a: &QuotientAlgebra, i: usize) -> Representation {
    let st = a.structure();
    let n = a.quiver().num_vertices();
    let blocks: Vec<Vec<usize>> = (0..n).map(|j| st.block_basis(i, j)).collect();
    let dims = blocks.iter().map(Vec::len).collect();
    let maps = (0..a.quiver().num_arrows())
        .map(|x| {
            let arr = a.quiver().arrow(x);
            let av = a.arrow_vector(x);
            let rows = blocks[arr.source]
                .iter()
                .map(|&u| {
                    let prod = st.mul(&st.basis_vector(u), &av);
                    blocks[arr.target].iter().map(|&w| prod[w].clone()).collect()
                })
                .collect();
            Matrix::from_rows(rows, blocks[arr.target].len())
        })
        .collect();
    Representation { dims, maps }
}

/// The simple module at vertex `i`.
pub fn simple(a: &QuotientAlgebra, i: usize) -> Representation {
    let q = a.quiver();
    let mut dims = vec![0; q.num_vertices()];
    dims[i] = 1;
    let maps = q
        .arrows()
        .iter()
        .map(|arr| Matrix::zeros(dims[arr.source], dims[arr.target]))
        .collect();
    Representation { dims, maps }
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &QuotientAlgebra, parts: &[Representation]) -> Representation {
    let q = a.quiver();
    let dims: Vec<usize> = (0..q.num_vertices())
        .map(|v| parts.iter().map(|p| p.dims[v]).sum())
        .collect();
    let maps = (0..q.num_arrows())
        .map(|x| {
            let arr = q.arrow(x);
            let mut m = Matrix::zeros(dims[arr.source], dims[arr.target]);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let pm = &p.maps[x];
                for i in 0..pm.nrows() {
                    for j in 0..pm.ncols() {
                        m.set(r0 + i, c0 + j, pm.get(i, j).clone());
                    }
                }
                r0 += pm.nrows();
                c0 += pm.ncols();
            }
            m
        })
        .collect();
    Representation { dims, maps }
}

/// A morphism of representations given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub maps: Vec<Matrix>,
}

impl ModuleMap {
    pub fn commutes(&self, src: &Representation, dst: &Representation, a: &QuotientAlgebra) -> bool {
        a.quiver().arrows().iter().enumerate().all(|(x, arr)| {
            src.maps[x].mul(&self.maps[arr.target]) == self.maps[arr.source].mul(&dst.maps[x])
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }
}

/// A minimal projective cover `⊕ P_j → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// vertex of each indecomposable summand, in order
    pub summands: Vec<usize>,
    pub module: Representation,
    pub epi: ModuleMap,
}

impl ProjectiveCover {
    /// Multiplicity of `P_j` in the cover.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &j in &self.summands {
            m[j] += 1;
        }
        m
    }
}

pub fn projective_cover(a: &QuotientAlgebra, m: &Representation) -> ProjectiveCover {
    let n = a.quiver().num_vertices();
    let mut generators: Vec<(usize, Vector)> = Vec::new();
    for v in 0..n {
        let mut rad = m.radical_part(a, v);
        for k in 0..m.dims[v] {
            let e = crate::linalg::unit_vector(m.dims[v], k);
            if rad.insert(e.clone()) {
                generators.push((v, e));
            }
        }
    }
    let summands: Vec<usize> = generators.iter().map(|(v, _)| *v).collect();
    let projectives: Vec<Representation> = (0..n).map(|j| projective(a, j)).collect();
    let module = direct_sum(a, &summands.iter().map(|&j| projectives[j].clone()).collect::<Vec<_>>());

    // row k of the epi at vertex v: the k-th basis element of P_v, a basis
    // path p of some summand with generator t, goes to t · M(p)
    let mut rows: Vec<Vec<Vector>> = vec![Vec::new(); n];
    for (j, t) in &generators {
        let st = a.structure();
        for v in 0..n {
            for u in st.block_basis(*j, v) {
                let img = m.act_path(&a.basis()[u]).apply_row(t);
                rows[v].push(img);
            }
        }
    }
    let maps = rows
        .into_iter()
        .enumerate()
        .map(|(v, r)| Matrix::from_rows(r, m.dims[v]))
        .collect();
    ProjectiveCover {
        summands,
        module,
        epi: ModuleMap { maps },
    }
}

/// A syzygy together with its embedding into the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub module: Representation,
    pub cover: ProjectiveCover,
    /// per vertex, rows spanning the kernel inside the cover
    pub inclusion: ModuleMap,
}

/// Kernel of the projective cover of `m`.
pub fn syzygy_with_cover(a: &QuotientAlgebra, m: &Representation) -> Syzygy {
    let cover = projective_cover(a, m);
    let n = a.quiver().num_vertices();
    let kernels: Vec<Subspace> = (0..n)
        .map(|v| {
            let pdim = cover.module.dims[v];
            Subspace::spanned_by(pdim, cover.epi.maps[v].left_kernel())
        })
        .collect();
    let dims: Vec<usize> = kernels.iter().map(Subspace::dim).collect();
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(x, arr)| {
            let rows = kernels[arr.source]
                .rows()
                .iter()
                .map(|k| {
                    let img = cover.module.maps[x].apply_row(k);
                    kernels[arr.target]
                        .coordinates(&img)
                        .expect("kernel is a subrepresentation")
                })
                .collect();
            Matrix::from_rows(rows, dims[arr.target])
        })
        .collect();
    let inclusion = ModuleMap {
        maps: kernels
            .iter()
            .enumerate()
            .map(|(v, k)| Matrix::from_rows(k.rows().to_vec(), cover.module.dims[v]))
            .collect(),
    };
    Syzygy {
        module: Representation { dims, maps },
        cover,
        inclusion,
    }
}

pub fn syzygy(a: &QuotientAlgebra, m: &Representation) -> Representation {
    syzygy_with_cover(a, m).module
}

/// Basis of `Hom_A(M, N)` as lists of per-vertex matrices.
pub fn hom_space(a: &QuotientAlgebra, m: &Representation, n: &Representation) -> Vec<ModuleMap> {
    let q = a.quiver();
    let nv = q.num_vertices();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offsets[nv];
    // variable (v, r, c) is entry (r, c) of f_v
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * n.dims[v] + c;
    let mut eqs = Subspace::new(unknowns);
    for (x, arr) in q.arrows().iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let ma = &m.maps[x];
        let na = &n.maps[x];
        // (M_a f_j - f_i N_a)[r][c] = 0
        for r in 0..m.dims[i] {
            for c in 0..n.dims[j] {
                let mut row = zero_vector(unknowns);
                for k in 0..m.dims[j] {
                    let coef = ma.get(r, k);
                    if !coef.is_zero() {
                        row[var(j, k, c)] += coef;
                    }
                }
                for k in 0..n.dims[i] {
                    let coef = na.get(k, c);
                    if !coef.is_zero() {
                        row[var(i, r, k)] -= coef;
                    }
                }
                eqs.insert(row);
            }
        }
    }
    let sols = if eqs.dim() == 0 {
        (0..unknowns).map(|u| crate::linalg::unit_vector(unknowns, u)).collect()
    } else {
        Matrix::from_rows(eqs.into_rows(), unknowns).kernel()
    };
    sols.into_iter()
        .map(|s| ModuleMap {
            maps: (0..nv)
                .map(|v| {
                    let rows = (0..m.dims[v])
                        .map(|r| (0..n.dims[v]).map(|c| s[var(v, r, c)].clone()).collect())
                        .collect();
                    Matrix::from_rows(rows, n.dims[v])
                })
                .collect(),
        })
        .collect()
}

pub fn hom_dimension(a: &QuotientAlgebra, m: &Representation, n: &Representation) -> usize {
    hom_space(a, m, n).len()
}

fn combine_maps(basis: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
    let mut maps: Vec<Matrix> = basis[0]
        .maps
        .iter()
        .map(|m| Matrix::zeros(m.nrows(), m.ncols()))
        .collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (acc, m) in maps.iter_mut().zip(&b.maps) {
            *acc = acc.add(&m.scale(c));
        }
    }
    ModuleMap { maps }
}

/// Searches `Hom(M, N)` for an isomorphism: seeded random combinations
/// first, then a sweep over coefficients in `{0, ±1, ±2}`.
pub fn modules_isomorphic(
    a: &QuotientAlgebra,
    m: &Representation,
    n: &Representation,
    seed: u64,
    cap: usize,
) -> Option<ModuleMap> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap {
            maps: m.dims.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        });
    }
    let basis = hom_space(a, m, n);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..crate::analysis::RANDOM_TRIALS {
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| Scalar::from_int(rng.gen_range(-9..=9)))
            .collect();
        let f = combine_maps(&basis, &coeffs);
        if f.is_invertible() {
            return Some(f);
        }
    }
    const GRID: [i64; 5] = [0, 1, -1, 2, -2];
    let k = basis.len();
    let mut digits = vec![0usize; k];
    let mut tried = 0usize;
    loop {
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
        let f = combine_maps(&basis, &coeffs);
        if f.is_invertible() {
            return Some(f);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitStep {
    pub step: usize,
    pub dims: Vec<usize>,
    pub isomorphic_to_start: bool,
}

/// Dimension vectors of `Ω^k(S_i)` for `k = 1..=steps`, each compared with
/// the simple `S_i`.
pub fn omega_orbit(a: &QuotientAlgebra, i: usize, steps: usize, seed: u64, cap: usize) -> Vec<OrbitStep> {
    let start = simple(a, i);
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(steps);
    for step in 1..=steps {
        cur = syzygy(a, &cur);
        let iso = modules_isomorphic(a, &cur, &start, seed, cap).is_some();
        out.push(OrbitStep {
            step,
            dims: cur.dims.clone(),
            isomorphic_to_start: iso,
        });
    }
    out
}
