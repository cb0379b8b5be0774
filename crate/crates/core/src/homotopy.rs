//! Bounded complexes of projective modules and morphisms modulo homotopy.
//!
//! Differentials go up in degree, `d^n: X^n → X^{n+1}`. A map from the
//! summand `P_k = e_k A` to `P_j` is left multiplication by an element of
//! `e_j A e_k`, so a map between direct sums is a matrix whose rows are
//! target summands and whose columns are source summands; composition is
//! the matrix product with entries multiplied in the algebra.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::analysis::CartanMatrix;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Subspace, Vector};
use crate::presets::{parse_element, spherical, PresetParams};
use crate::quiver::{AlgebraElement, Quiver};
use crate::rewrite::QuotientAlgebra;

/// Rows are target summands, columns source summands.
pub type ElemMatrix = Vec<Vec<Vector>>;

fn zero_matrix(dim: usize, rows: usize, cols: usize) -> ElemMatrix {
    vec![vec![zero_vector(dim); cols]; rows]
}

fn mat_mul(alg: &FiniteAlgebra, left: &ElemMatrix, right: &ElemMatrix, cols: usize) -> ElemMatrix {
    let inner = right.len();
    left.iter()
        .map(|lrow| {
            (0..cols)
                .map(|c| {
                    let mut acc = zero_vector(alg.dim());
                    for k in 0..inner {
                        if is_zero_vector(&lrow[k]) || is_zero_vector(&right[k][c]) {
                            continue;
                        }
                        axpy(&mut acc, &Scalar::one(), &alg.mul(&lrow[k], &right[k][c]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_axpy(y: &mut ElemMatrix, c: &Scalar, x: &ElemMatrix) {
    for (yr, xr) in y.iter_mut().zip(x) {
        for (ye, xe) in yr.iter_mut().zip(xr) {
            axpy(ye, c, xe);
        }
    }
}

fn mat_is_zero(m: &ElemMatrix) -> bool {
    m.iter().flatten().all(|v| is_zero_vector(v))
}

/// A bounded complex of finitely generated projective modules.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjComplex {
    start: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<ElemMatrix>,
}

impl ProjComplex {
    /// `terms[k]` lists the vertices of the summands in degree `start + k`;
    /// `diffs[k]` goes from degree `start + k` to `start + k + 1`.
    pub fn new(alg: &FiniteAlgebra, start: i32, terms: Vec<Vec<usize>>, diffs: Vec<ElemMatrix>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidParams("need one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&terms[k], &terms[k + 1]);
            if d.len() != tgt.len() || d.iter().any(|r| r.len() != src.len()) {
                return Err(Error::InvalidParams(format!("differential {k} has the wrong shape")));
            }
            for (r, row) in d.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !in_block(alg, x, tgt[r], src[c]) {
                        return Err(Error::InvalidParams(format!(
                            "entry ({r}, {c}) of differential {k} is not in e_{} A e_{}",
                            tgt[r], src[c]
                        )));
                    }
                }
            }
        }
        let cx = ProjComplex { start, terms, diffs };
        for k in 0..cx.diffs.len().saturating_sub(1) {
            let n = cx.start + k as i32;
            let dd = mat_mul(alg, &cx.diffs[k + 1], &cx.diffs[k], cx.terms[k].len());
            if !mat_is_zero(&dd) {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(cx)
    }

    /// `P_v` in degree `degree`.
    pub fn stalk(v: usize, degree: i32) -> Self {
        ProjComplex {
            start: degree,
            terms: vec![vec![v]],
            diffs: Vec::new(),
        }
    }

    pub fn term(&self, n: i32) -> &[usize] {
        let k = n - self.start;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// `d^n` with the right shape, zero outside the stored range.
    pub fn diff(&self, dim: usize, n: i32) -> ElemMatrix {
        let k = n - self.start;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            zero_matrix(dim, self.term(n + 1).len(), self.term(n).len())
        }
    }

    /// Degrees carrying a nonzero term.
    pub fn support(&self) -> Vec<i32> {
        (0..self.terms.len())
            .filter(|&k| !self.terms[k].is_empty())
            .map(|k| self.start + k as i32)
            .collect()
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.start + self.terms.len() as i32 - 1
    }

    /// Total number of indecomposable summands over all degrees.
    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// `X[s]^n = X^{n+s}` with differential `(−1)^s d`.
    pub fn shift(&self, s: i32) -> Self {
        let sign = if s.rem_euclid(2) == 1 { Scalar::from_int(-1) } else { Scalar::one() };
        ProjComplex {
            start: self.start - s,
            terms: self.terms.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|r| r.iter().map(|x| crate::linalg::scale_vector(x, &sign)).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

fn in_block(alg: &FiniteAlgebra, x: &[Scalar], i: usize, j: usize) -> bool {
    x.iter()
        .enumerate()
        .all(|(u, c)| c.is_zero() || alg.block(u) == (i, j))
}

/// Degree-wise maps; missing degrees are zero.
pub type Family = BTreeMap<i32, ElemMatrix>;

/// A morphism of complexes of degree zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub components: Family,
}

impl ChainMap {
    /// Checks shapes, blocks and commutation with the differentials.
    pub fn new(alg: &FiniteAlgebra, source: ProjComplex, target: ProjComplex, components: Family) -> Result<Self> {
        for (&n, m) in &components {
            let (rows, cols) = (target.term(n), source.term(n));
            if m.len() != rows.len() || m.iter().any(|r| r.len() != cols.len()) {
                return Err(Error::InvalidParams(format!("component in degree {n} has the wrong shape")));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !in_block(alg, x, rows[r], cols[c]) {
                        return Err(Error::InvalidParams(format!("component in degree {n} leaves its block")));
                    }
                }
            }
        }
        let f = ChainMap { source, target, components };
        if let Some(n) = f.failing_degree(alg) {
            return Err(Error::NotAChainMap(n));
        }
        Ok(f)
    }

    pub fn component(&self, dim: usize, n: i32) -> ElemMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| zero_matrix(dim, self.target.term(n).len(), self.source.term(n).len()))
    }

    fn failing_degree(&self, alg: &FiniteAlgebra) -> Option<i32> {
        let dim = alg.dim();
        let lo = self.source.start().min(self.target.start()) - 1;
        let hi = self.source.end().max(self.target.end()) + 1;
        (lo..=hi).find(|&n| {
            let cols = self.source.term(n).len();
            let left = mat_mul(alg, &self.target.diff(dim, n), &self.component(dim, n), cols);
            let right = mat_mul(alg, &self.component(dim, n + 1), &self.source.diff(dim, n), cols);
            left != right
        })
    }

    pub fn identity(alg: &FiniteAlgebra, x: &ProjComplex) -> Self {
        let mut components = Family::new();
        for n in x.start()..=x.end() {
            let t = x.term(n);
            let mut m = zero_matrix(alg.dim(), t.len(), t.len());
            for (k, &v) in t.iter().enumerate() {
                m[k][k] = alg.idempotent(v).clone();
            }
            components.insert(n, m);
        }
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, alg: &FiniteAlgebra, inner: &ChainMap) -> ChainMap {
        let dim = alg.dim();
        let mut components = Family::new();
        for n in inner.source.start()..=inner.source.end() {
            let cols = inner.source.term(n).len();
            let m = mat_mul(alg, &self.component(dim, n), &inner.component(dim, n), cols);
            components.insert(n, m);
        }
        ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        }
    }
}

/// One coordinate of a degree-wise map: entry `(row, col)` in degree
/// `degree`, along basis element `basis` of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Var {
    degree: i32,
    row: usize,
    col: usize,
    basis: usize,
}

fn variables(alg: &FiniteAlgebra, x: &ProjComplex, y: &ProjComplex, offset: i32) -> Vec<Var> {
    // maps X^n → Y^{n+offset}
    let mut vars = Vec::new();
    for n in x.start()..=x.end() {
        let (cols, rows) = (x.term(n), y.term(n + offset));
        for (r, &tv) in rows.iter().enumerate() {
            for (c, &sv) in cols.iter().enumerate() {
                for u in alg.block_basis(tv, sv) {
                    vars.push(Var {
                        degree: n,
                        row: r,
                        col: c,
                        basis: u,
                    });
                }
            }
        }
    }
    vars
}

fn family_of(alg: &FiniteAlgebra, x: &ProjComplex, y: &ProjComplex, offset: i32, vars: &[Var], coeffs: &[Scalar]) -> Family {
    let mut fam = Family::new();
    for (v, c) in vars.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let m = fam.entry(v.degree).or_insert_with(|| {
            zero_matrix(alg.dim(), y.term(v.degree + offset).len(), x.term(v.degree).len())
        });
        m[v.row][v.col][v.basis] += c;
    }
    fam
}

fn coords_of(fam: &Family, vars: &[Var]) -> Vector {
    vars.iter()
        .map(|v| {
            fam.get(&v.degree)
                .map_or_else(Scalar::zero, |m| m[v.row][v.col][v.basis].clone())
        })
        .collect()
}

/// `Hom_{K^b}(X, Y[s])` with a fixed complement of the null-homotopic maps.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: ProjComplex,
    target: ProjComplex,
    shift: i32,
    vars: Vec<Var>,
    chain_dim: usize,
    null: Subspace,
    classes: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn chain_map_dim(&self) -> usize {
        self.chain_dim
    }

    pub fn null_homotopic_dim(&self) -> usize {
        self.null.dim()
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Chain-map representatives of the basis classes.
    pub fn basis(&self, alg: &FiniteAlgebra) -> Vec<ChainMap> {
        self.classes
            .rows()
            .iter()
            .map(|row| ChainMap {
                source: self.source.clone(),
                target: self.target.clone(),
                components: family_of(alg, &self.source, &self.target, 0, &self.vars, row),
            })
            .collect()
    }

    /// Coordinates of the class of a chain map `X → Y[s]`.
    pub fn coordinates(&self, f: &ChainMap) -> Vector {
        let v = self.null.reduce(&coords_of(&f.components, &self.vars));
        self.classes
            .coordinates(&v)
            .expect("chain map reduces into the chosen complement")
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.null.contains(&coords_of(&f.components, &self.vars))
    }
}

/// Chain maps `X → Y[s]` modulo null-homotopic ones.
pub fn hom_complexes(alg: &FiniteAlgebra, x: &ProjComplex, y: &ProjComplex, shift: i32) -> HomSpace {
    let y = y.shift(shift);
    let dim = alg.dim();
    let vars = variables(alg, x, &y, 0);
    let lo = x.start().min(y.start()) - 1;
    let hi = x.end().max(y.end()) + 1;

    // f ↦ d_Y f − f d_X, flattened over the degrees it lives in
    let images: Vec<Vector> = (0..vars.len())
        .map(|k| {
            let f = family_of(alg, x, &y, 0, &vars, &unit_vector(vars.len(), k));
            let mut out = Vec::new();
            for n in lo..=hi {
                let cols = x.term(n).len();
                let fn_ = f.get(&n).cloned().unwrap_or_else(|| zero_matrix(dim, y.term(n).len(), cols));
                let fn1 = f
                    .get(&(n + 1))
                    .cloned()
                    .unwrap_or_else(|| zero_matrix(dim, y.term(n + 1).len(), x.term(n + 1).len()));
                let mut g = mat_mul(alg, &y.diff(dim, n), &fn_, cols);
                mat_axpy(&mut g, &Scalar::from_int(-1), &mat_mul(alg, &fn1, &x.diff(dim, n), cols));
                for row in g {
                    for e in row {
                        out.extend(e);
                    }
                }
            }
            out
        })
        .collect();
    let width = images.first().map_or(0, Vec::len);
    let chain_maps = if vars.is_empty() {
        Vec::new()
    } else {
        Matrix::from_rows(images, width).left_kernel()
    };

    // h ↦ d_Y h + h d_X for homotopies h: X^n → Y^{n−1}
    let hvars = variables(alg, x, &y, -1);
    let mut null = Subspace::new(vars.len());
    for k in 0..hvars.len() {
        let h = family_of(alg, x, &y, -1, &hvars, &unit_vector(hvars.len(), k));
        let mut fam = Family::new();
        for n in lo..=hi {
            let cols = x.term(n).len();
            let hn = h
                .get(&n)
                .cloned()
                .unwrap_or_else(|| zero_matrix(dim, y.term(n - 1).len(), cols));
            let hn1 = h
                .get(&(n + 1))
                .cloned()
                .unwrap_or_else(|| zero_matrix(dim, y.term(n).len(), x.term(n + 1).len()));
            let mut g = mat_mul(alg, &y.diff(dim, n - 1), &hn, cols);
            mat_axpy(&mut g, &Scalar::one(), &mat_mul(alg, &hn1, &x.diff(dim, n), cols));
            fam.insert(n, g);
        }
        null.insert(coords_of(&fam, &vars));
    }

    let chain_dim = chain_maps.len();
    let classes = Subspace::spanned_by(vars.len(), chain_maps.iter().map(|z| null.reduce(z)));
    HomSpace {
        source: x.clone(),
        target: y,
        shift,
        vars,
        chain_dim,
        null,
        classes,
    }
}

/// `Σ_{r,s} (−1)^{r−s} dim Hom_A(X^r, Y^s)` from Cartan entries, where
/// `dim Hom_A(P_k, P_j) = C[j][k]`.
pub fn euler_hom_dimension(x: &ProjComplex, y: &ProjComplex, c: &CartanMatrix) -> i64 {
    let mut total = 0i64;
    for r in x.start()..=x.end() {
        for s in y.start()..=y.end() {
            let sign = if (r - s).rem_euclid(2) == 0 { 1 } else { -1 };
            for &k in x.term(r) {
                for &j in y.term(s) {
                    total += sign * c.entry(j, k) as i64;
                }
            }
        }
    }
    total
}

fn element(a: &QuotientAlgebra, text: &str) -> Result<Vector> {
    Ok(a.to_vector(&parse_element(a.quiver(), a.field(), text)?))
}

/// The six summands `T_1, …, T_6` of the tilting complex over the
/// tetrahedral algebra. `T_3` is `P_2 → P_3 ⊕ P_4` in degrees −1 and 0.
pub fn build_tilting_complex(lam: &QuotientAlgebra) -> Result<Vec<ProjComplex>> {
    let q = lam.quiver();
    let v = |name: &str| q.vertex(name);
    let alg = lam.structure();
    let t3 = ProjComplex::new(
        alg,
        -1,
        vec![vec![v("2")?], vec![v("3")?, v("4")?]],
        vec![vec![vec![element(lam, "-sigma")?], vec![element(lam, "beta")?]]],
    )?;
    Ok(vec![
        ProjComplex::stalk(v("1")?, 0),
        ProjComplex::stalk(v("5")?, 0),
        t3,
        ProjComplex::stalk(v("3")?, 0),
        ProjComplex::stalk(v("4")?, 0),
        ProjComplex::stalk(v("6")?, 0),
    ])
}

/// Shift range checked explicitly for the vanishing condition.
pub const SHIFT_RANGE: i32 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct ShiftedHom {
    pub source: usize,
    pub target: usize,
    pub shift: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    /// all computed `dim Hom(T_i, T_j[s])`, 1-based indices, `s ≠ 0`
    pub shifted_homs: Vec<ShiftedHom>,
    /// `|s|` beyond which the degree supports cannot overlap
    pub support_bound: i32,
    /// vertices in the order they were found to be generated
    pub generation_order: Vec<usize>,
}

/// Order in which the projectives `P_v` are reached by the generation
/// fixpoint: a stalk generates its summand, and a summand of any complex is
/// generated once all other summands of that complex are.
pub fn generation_fixpoint(ts: &[ProjComplex], num_vertices: usize) -> Vec<usize> {
    let mut generated = vec![false; num_vertices];
    let mut order = Vec::new();
    loop {
        let mut changed = false;
        for t in ts {
            let all: Vec<usize> = (t.start()..=t.end()).flat_map(|n| t.term(n).to_vec()).collect();
            for (p, &v) in all.iter().enumerate() {
                if generated[v] {
                    continue;
                }
                let others_done = all
                    .iter()
                    .enumerate()
                    .all(|(k, &w)| k == p || generated[w]);
                if others_done {
                    generated[v] = true;
                    order.push(v);
                    changed = true;
                }
            }
        }
        if !changed {
            return order;
        }
    }
}

/// Vanishing of `Hom(T_i, T_j[s])` for all `s ≠ 0` with `|s|` up to the
/// larger of [`SHIFT_RANGE`] and the width of the supports, beyond which no
/// degree-wise maps exist at all; then the generation fixpoint.
pub fn verify_tilting(alg: &FiniteAlgebra, ts: &[ProjComplex]) -> Result<TiltingReport> {
    let lo = ts.iter().map(ProjComplex::start).min().unwrap_or(0);
    let hi = ts.iter().map(ProjComplex::end).max().unwrap_or(0);
    let bound = hi - lo + 1;
    let range = SHIFT_RANGE.max(bound);
    let mut shifted = Vec::new();
    for (i, x) in ts.iter().enumerate() {
        for (j, y) in ts.iter().enumerate() {
            for s in -range..=range {
                if s == 0 {
                    continue;
                }
                let h = hom_complexes(alg, x, y, s);
                if h.dim() != 0 {
                    return Err(Error::Condition1Failure {
                        from: i + 1,
                        to: j + 1,
                        shift: s,
                        dim: h.dim(),
                    });
                }
                shifted.push(ShiftedHom {
                    source: i + 1,
                    target: j + 1,
                    shift: s,
                    dim: 0,
                });
            }
        }
    }
    let order = generation_fixpoint(ts, alg.num_vertices());
    if let Some(v) = (0..alg.num_vertices()).find(|v| !order.contains(v)) {
        return Err(Error::Condition2Failure(v + 1));
    }
    Ok(TiltingReport {
        shifted_homs: shifted,
        support_bound: bound,
        generation_order: order.iter().map(|v| v + 1).collect(),
    })
}

/// `End(⊕ T_i)` with `e_i R e_j = Hom(T_j, T_i)` and product given by
/// composition, `x · y = x ∘ y`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    structure: FiniteAlgebra,
    homs: Vec<Vec<HomSpace>>,
    offsets: Vec<Vec<usize>>,
}

impl EndomorphismAlgebra {
    pub fn structure(&self) -> &FiniteAlgebra {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    /// `Hom(T_j, T_i)`.
    pub fn hom(&self, i: usize, j: usize) -> &HomSpace {
        &self.homs[i][j]
    }

    /// Class of a chain map `T_j → T_i` as an element of the algebra.
    pub fn class_of(&self, i: usize, j: usize, f: &ChainMap) -> Vector {
        let mut v = zero_vector(self.dim());
        for (k, c) in self.homs[i][j].coordinates(f).into_iter().enumerate() {
            v[self.offsets[i][j] + k] = c;
        }
        v
    }
}

pub fn endomorphism_algebra(alg: &FiniteAlgebra, ts: &[ProjComplex]) -> EndomorphismAlgebra {
    let n = ts.len();
    let homs: Vec<Vec<HomSpace>> = (0..n)
        .map(|i| (0..n).map(|j| hom_complexes(alg, &ts[j], &ts[i], 0)).collect())
        .collect();
    let reps: Vec<Vec<Vec<ChainMap>>> = homs
        .iter()
        .map(|row| row.iter().map(|h| h.basis(alg)).collect())
        .collect();
    let mut offsets = vec![vec![0usize; n]; n];
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    let mut owner = Vec::new();
    for i in 0..n {
        for j in 0..n {
            offsets[i][j] = labels.len();
            for k in 0..homs[i][j].dim() {
                labels.push(format!("T{}->T{}#{}", j + 1, i + 1, k));
                blocks.push((i, j));
                owner.push((i, j, k));
            }
        }
    }
    let dim = labels.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (u, &(i, j, k)) in owner.iter().enumerate() {
        for (w, &(j2, l, k2)) in owner.iter().enumerate() {
            if j2 != j {
                continue;
            }
            let comp = reps[i][j][k].after(alg, &reps[j][l][k2]);
            let coords = homs[i][l].coordinates(&comp);
            table[u][w] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| (offsets[i][l] + t, c))
                .collect();
        }
    }
    let idempotents = (0..n)
        .map(|i| {
            let id = ChainMap::identity(alg, &ts[i]);
            let mut v = zero_vector(dim);
            for (k, c) in homs[i][i].coordinates(&id).into_iter().enumerate() {
                v[offsets[i][i] + k] = c;
            }
            v
        })
        .collect();
    EndomorphismAlgebra {
        structure: FiniteAlgebra::new(n, labels, blocks, idempotents, table, alg.modulus()),
        homs,
        offsets,
    }
}

/// A named morphism between summands of the tilting complex.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    /// 0-based indices: the map goes `T_source → T_target`
    pub source: usize,
    pub target: usize,
    pub map: ChainMap,
}

/// The eight maps between summands of `T`, named after the arrows of the
/// spherical quiver they correspond to.
pub fn build_generators(lam: &QuotientAlgebra, ts: &[ProjComplex], m: usize) -> Result<Vec<Generator>> {
    let alg = lam.structure();
    let k = m - 1;
    // (name, source T, target T, degree-0 entries as rows of text)
    let specs: [(&str, usize, usize, Vec<Vec<String>>); 8] = [
        ("alpha", 2, 1, vec![vec!["delta".into()]]),
        (
            "beta",
            3,
            2,
            vec![vec!["xi".into(), format!("eta + L*(eta.gamma.delta)^{k}.eta")]],
        ),
        ("gamma", 4, 3, vec![vec!["e(3)".into()], vec!["0".into()]]),
        ("sigma", 1, 4, vec![vec!["alpha".into()]]),
        ("delta", 1, 5, vec![vec!["gamma".into()]]),
        ("rho", 6, 1, vec![vec!["nu".into()]]),
        ("omega", 3, 6, vec![vec!["mu".into(), "omega".into()]]),
        ("nu", 5, 3, vec![vec!["0".into()], vec!["e(4)".into()]]),
    ];
    specs
        .into_iter()
        .map(|(name, s, t, rows)| {
            let entries = rows
                .iter()
                .map(|r| r.iter().map(|e| element(lam, e)).collect::<Result<Vec<_>>>())
                .collect::<Result<ElemMatrix>>()?;
            let mut comps = Family::new();
            comps.insert(0, entries);
            let map = ChainMap::new(alg, ts[s - 1].clone(), ts[t - 1].clone(), comps)?;
            Ok(Generator {
                name: name.to_string(),
                source: s - 1,
                target: t - 1,
                map,
            })
        })
        .collect()
}

/// Evaluates a combination of paths of the spherical quiver in `End(T)`,
/// sending vertex `i` to the identity of `T_i` and each arrow to the class
/// in `images`.
pub fn evaluate(end: &EndomorphismAlgebra, quiver: &Quiver, images: &[Vector], x: &AlgebraElement) -> Vector {
    let st = end.structure();
    let mut out = zero_vector(st.dim());
    for (p, c) in x.terms() {
        let mut v = st.idempotent(p.source()).clone();
        for &a in p.arrows() {
            v = st.mul(&v, &images[a]);
        }
        debug_assert!(quiver.num_arrows() == images.len());
        axpy(&mut out, c, &v);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    /// the ten identities among the generator classes
    pub identities: Vec<NamedCheck>,
    /// the defining relations of the spherical algebra after substitution
    pub relations: Vec<NamedCheck>,
    pub generated_dim: usize,
    pub expected_dim: usize,
    /// rank of the induced map from the spherical algebra onto `End(T)`
    pub image_rank: usize,
    /// `dim e_i (rad/rad²) e_j` of `End(T)` from the generator classes
    pub arrow_matrix: Vec<Vec<usize>>,
    /// adjacency matrix of the spherical quiver
    pub spherical_arrows: Vec<Vec<usize>>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|c| c.passed)
            && self.relations.iter().all(|c| c.passed)
            && self.generated_dim == self.expected_dim
            && self.image_rank == self.expected_dim
    }
}

/// Span of the words in the generators, starting from the idempotents.
pub fn generated_subalgebra(alg: &FiniteAlgebra, generators: &[Vector]) -> Subspace {
    let mut span = Subspace::new(alg.dim());
    let mut queue: VecDeque<Vector> = VecDeque::new();
    for i in 0..alg.num_vertices() {
        let e = alg.idempotent(i).clone();
        if span.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = alg.mul(&v, g);
            if span.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    span
}

/// Checks that the generator classes satisfy the spherical relations and
/// generate all of `End(T)`.
pub fn verify_spherical_presentation(
    end: &EndomorphismAlgebra,
    gens: &[Generator],
    params: &PresetParams,
) -> Result<PresentationReport> {
    let st = end.structure();
    let sph = spherical(params);
    let q = &sph.quiver;
    let field = params.field();
    let m = params.m();
    let k = m - 1;

    let mut images = vec![zero_vector(st.dim()); q.num_arrows()];
    for g in gens {
        let a = q.arrow_id(&g.name)?;
        images[a] = end.class_of(g.target, g.source, &g.map);
    }
    let eval = |text: &str, imgs: &[Vector]| -> Result<Vector> {
        let x = parse_element(q, field, text)?;
        Ok(evaluate(end, q, imgs, &x))
    };
    let check = |name: String, text: &str, imgs: &[Vector]| -> Result<NamedCheck> {
        let v = eval(text, imgs)?;
        Ok(NamedCheck {
            name,
            passed: is_zero_vector(&v),
            residual: st.fmt_vector(&v),
        })
    };

    let identity_texts = [
        "alpha.beta.gamma - rho.omega.gamma".to_string(),
        "sigma.alpha.beta - sigma.rho.omega".to_string(),
        "gamma.sigma.rho - nu.delta.rho".to_string(),
        "omega.gamma.sigma - omega.nu.delta".to_string(),
        format!("beta.nu.delta - beta.gamma.sigma - L*(beta.gamma.sigma.alpha)^{k}.beta.gamma.sigma"),
        format!("nu.delta.alpha - gamma.sigma.alpha - L*(gamma.sigma.alpha.beta)^{k}.gamma.sigma.alpha"),
        format!("delta.alpha.beta - delta.rho.omega - L*(delta.rho.omega.nu)^{k}.delta.rho.omega"),
        format!("alpha.beta.nu - rho.omega.nu - L*(rho.omega.nu.delta)^{k}.rho.omega.nu"),
        format!("(alpha.beta.gamma.sigma)^{m}.alpha"),
        format!("(gamma.sigma.alpha.beta)^{m}.gamma"),
    ];
    let identities = identity_texts
        .iter()
        .enumerate()
        .map(|(i, t)| check(format!("({}) {t}", i + 1), t, &images))
        .collect::<Result<Vec<_>>>()?;

    // replace the image of rho by rho + λ (αβγσ)^{m−1} rho
    let rho = q.arrow_id("rho")?;
    let rho_star = eval(&format!("rho + L*(alpha.beta.gamma.sigma)^{k}.rho"), &images)?;
    let mut starred = images.clone();
    starred[rho] = rho_star;
    let relations = sph
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let v = evaluate(end, q, &starred, &r.element());
            NamedCheck {
                name: format!("relation {}: {} = {}", i + 1, q.fmt_element(&r.lhs), q.fmt_element(&r.rhs)),
                passed: is_zero_vector(&v),
                residual: st.fmt_vector(&v),
            }
        })
        .collect();

    let gen_vectors: Vec<Vector> = starred.clone();
    let generated = generated_subalgebra(st, &gen_vectors);

    // image of the normal-form basis of the spherical algebra
    let sph_alg = sph.build(field, params.default_cap(), crate::rewrite::DEFAULT_RULE_BUDGET)?;
    let image = Subspace::spanned_by(
        st.dim(),
        sph_alg
            .basis()
            .iter()
            .map(|p| evaluate(end, q, &starred, &AlgebraElement::from_path(p.clone()))),
    );

    let mut spherical_arrows = vec![vec![0usize; q.num_vertices()]; q.num_vertices()];
    for arr in q.arrows() {
        spherical_arrows[arr.source][arr.target] += 1;
    }
    Ok(PresentationReport {
        identities,
        relations,
        generated_dim: generated.dim(),
        expected_dim: 36 * m + 4,
        image_rank: image.dim(),
        arrow_matrix: crate::analysis::arrow_matrix(st, &gen_vectors),
        spherical_arrows,
    })
}
