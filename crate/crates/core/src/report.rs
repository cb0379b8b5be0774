//! Verification suites over the two presets and their serialized reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    arrow_generators, cartan, find_symmetrizing_form, socle_bases, DEFAULT_SEARCH_CAP,
};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homotopy::{
    build_generators, build_tilting_complex, endomorphism_algebra, euler_hom_dimension, hom_complexes,
    verify_spherical_presentation, verify_tilting, EndomorphismAlgebra, ProjComplex,
};
use crate::linalg::Subspace;
use crate::presets::{parse_element, Preset, PresetParams};
use crate::quiver::{AlgebraElement, Path};
use crate::rep::{modules_isomorphic, simple, syzygy};
use crate::rewrite::{verify_by_truncation, QuotientAlgebra, DEFAULT_RULE_BUDGET};

pub const SCHEMA_VERSION: u32 = 1;

/// Random element pairs on which a symmetrizing form is re-checked.
pub const FORM_RECHECK_PAIRS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Structure,
    Identities,
    Symmetric,
    Tilting,
    DerivedEquivalence,
    Periodicity,
    All,
}

impl Suite {
    const PARTS: [Suite; 6] = [
        Suite::Structure,
        Suite::Identities,
        Suite::Symmetric,
        Suite::Tilting,
        Suite::DerivedEquivalence,
        Suite::Periodicity,
    ];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::PARTS.to_vec(),
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Identities => "identities",
            Suite::Symmetric => "symmetric",
            Suite::Tilting => "tilting",
            Suite::DerivedEquivalence => "derived-equivalence",
            Suite::Periodicity => "periodicity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .iter()
            .chain(&[Suite::All])
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Run {
    pub m: usize,
    pub degree_cap: usize,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub field: String,
    pub lambda: String,
    pub seed: u64,
    pub notes: Vec<String>,
    pub runs: Vec<Run>,
    /// false when a failure stopped the run before all checks ran
    pub complete: bool,
}

impl VerificationReport {
    pub fn checks(&self) -> impl Iterator<Item = (usize, &Check)> {
        self.runs.iter().flat_map(|r| r.checks.iter().map(move |c| (r.m, c)))
    }

    pub fn status(&self) -> Status {
        let mut out = Status::Pass;
        for (_, c) in self.checks() {
            match c.status {
                Status::Fail => return Status::Fail,
                Status::Inconclusive => out = Status::Inconclusive,
                Status::Pass => {}
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Verification report: suite `{}`\n\n", self.suite);
        s += &format!(
            "- field: {}\n- lambda: {}\n- seed: {}\n- schema version: {}\n- overall: **{}**\n",
            self.field,
            self.lambda,
            self.seed,
            self.schema_version,
            self.status()
        );
        if !self.complete {
            s += "- stopped at the first failure (use --keep-going to run everything)\n";
        }
        s += "\n";
        for n in &self.notes {
            s += &format!("> {n}\n");
        }
        for run in &self.runs {
            s += &format!("\n## m = {} (degree cap {})\n\n", run.m, run.degree_cap);
            s += "| check | status | detail |\n|---|---|---|\n";
            for c in &run.checks {
                let t = c.millis.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
                s += &format!("| {} | {} | {}{} |\n", c.id, c.status, c.detail.replace('|', "\\|"), t);
            }
        }
        s
    }
}

/// Completion and search budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub rules: usize,
    pub search: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            rules: DEFAULT_RULE_BUDGET,
            search: DEFAULT_SEARCH_CAP,
        }
    }
}

impl Budget {
    /// The same value for both budgets.
    pub fn uniform(n: usize) -> Self {
        Budget { rules: n, search: n }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub ms: Vec<usize>,
    pub field: FieldSpec,
    pub seed: u64,
    pub cap: Option<usize>,
    pub budget: Budget,
    pub keep_going: bool,
    pub timings: bool,
}

impl VerifyOptions {
    pub fn new(suite: Suite, ms: Vec<usize>, field: FieldSpec) -> Self {
        VerifyOptions {
            suite,
            ms,
            field,
            seed: 0,
            cap: None,
            budget: Budget::default(),
            keep_going: false,
            timings: false,
        }
    }
}

/// Lazily built objects shared by the suites of one run.
struct Context {
    params: PresetParams,
    cap: usize,
    budget: Budget,
    seed: u64,
    spherical: Option<QuotientAlgebra>,
    tetrahedral: Option<QuotientAlgebra>,
    tilting: Option<Vec<ProjComplex>>,
    end: Option<EndomorphismAlgebra>,
}

impl Context {
    fn algebra(&mut self, preset: Preset) -> Result<&QuotientAlgebra> {
        let slot = match preset {
            Preset::Spherical => &mut self.spherical,
            Preset::Tetrahedral => &mut self.tetrahedral,
        };
        if slot.is_none() {
            let a = preset
                .presentation(&self.params)
                .build(self.params.field(), self.cap, self.budget.rules)?;
            *slot = Some(a);
        }
        Ok(slot.as_ref().unwrap())
    }

    fn tilting(&mut self) -> Result<Vec<ProjComplex>> {
        if self.tilting.is_none() {
            let t = build_tilting_complex(self.algebra(Preset::Tetrahedral)?)?;
            self.tilting = Some(t);
        }
        Ok(self.tilting.clone().unwrap())
    }

    fn end(&mut self) -> Result<&EndomorphismAlgebra> {
        if self.end.is_none() {
            let ts = self.tilting()?;
            let e = endomorphism_algebra(self.algebra(Preset::Tetrahedral)?.structure(), &ts);
            self.end = Some(e);
        }
        Ok(self.end.as_ref().unwrap())
    }
}

fn check(id: impl Into<String>, ok: bool, detail: impl Into<String>, data: Value) -> Check {
    Check {
        id: id.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
        data,
        millis: None,
    }
}

const PRESETS: [Preset; 2] = [Preset::Spherical, Preset::Tetrahedral];

fn structure_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let m = cx.params.m();
    let mut out = Vec::new();
    for p in PRESETS {
        let a = cx.algebra(p)?;
        let dim = a.dim();
        let expected = p.expected_dim(m);
        out.push(check(
            format!("dimension/{p}"),
            dim == expected,
            format!("dim = {dim}, expected {expected}"),
            json!({ "dim": dim, "expected": expected, "added_rules": a.system().num_added() }),
        ));
    }
    for p in PRESETS {
        let c = cartan(cx.algebra(p)?.structure());
        let expected = p.expected_cartan(m);
        out.push(check(
            format!("cartan/{p}"),
            c.0 == expected,
            format!("C[i][j] = dim e_i A e_j; symmetric: {}", c.is_symmetric()),
            json!({ "computed": c, "expected": expected }),
        ));
    }
    for p in PRESETS {
        // truncation degree two beyond the default cap, chosen independently
        // of anything the rewriting produced
        let degree = cx.params.default_cap() + 2;
        let pres = p.presentation(&cx.params);
        let blocks = cx.algebra(p)?.structure().cartan();
        let c = match verify_by_truncation(&pres.quiver, &pres.elements(), degree) {
            Ok(t) => check(
                format!("oracle/{p}"),
                t.blocks == blocks,
                format!("truncated quotient at degree {degree}: total {}", t.total()),
                json!({ "degree": degree, "blocks": t.blocks }),
            ),
            Err(e) => check(format!("oracle/{p}"), false, e.to_string(), Value::Null),
        };
        out.push(c);
    }
    for p in PRESETS {
        let a = cx.algebra(p)?;
        let st = a.structure();
        let socles = socle_bases(st, &arrow_generators(a));
        let dims: Vec<usize> = socles.iter().map(Vec::len).collect();
        // the socle should be spanned by the image of a longest path with
        // nonzero image; under deglex that image need not be a basis path
        let spanned = socles.iter().enumerate().all(|(i, basis)| {
            let longest = longest_nonzero_path(a, i);
            let span = Subspace::spanned_by(st.dim(), basis.iter().cloned());
            basis.len() == 1 && span.contains(&longest)
        });
        out.push(check(
            format!("socle/{p}"),
            spanned,
            format!("socle dimensions {dims:?}"),
            json!({ "dims": dims }),
        ));
    }
    Ok(out)
}

/// Image of some longest path starting at `i` that is nonzero in `a`.
fn longest_nonzero_path(a: &QuotientAlgebra, i: usize) -> crate::linalg::Vector {
    let q = a.quiver();
    let mut layer = vec![q.stationary(i)];
    loop {
        let next: Vec<Path> = layer
            .iter()
            .flat_map(|p| q.arrows_from(p.target()).map(move |x| p.compose(&q.arrow_path(x)).unwrap()))
            .filter(|p| !a.normal_form(&AlgebraElement::from_path(p.clone())).is_zero())
            .collect();
        if next.is_empty() {
            return a.to_vector(&AlgebraElement::from_path(layer[0].clone()));
        }
        layer = next;
    }
}

/// Consequences of the spherical relations, as `(label, expression that
/// should vanish)`.
pub fn spherical_consequences(m: usize) -> Vec<(String, String)> {
    let k = m - 1;
    let mut out: Vec<(String, String)> = [
        format!("(beta.gamma.sigma.alpha)^{k}.beta.gamma.sigma.rho"),
        format!("(alpha.beta.gamma.sigma)^{m}.rho"),
        format!("omega.gamma.sigma.alpha.(beta.gamma.sigma.alpha)^{k}"),
        format!("omega.(gamma.sigma.alpha.beta)^{m}"),
        format!("(sigma.alpha.beta.gamma)^{k}.sigma.alpha.beta.nu"),
        format!("(gamma.sigma.alpha.beta)^{m}.nu"),
        format!("delta.alpha.beta.gamma.(sigma.alpha.beta.gamma)^{k}"),
        format!("delta.(alpha.beta.gamma.sigma)^{m}"),
    ]
    .into_iter()
    .map(|w| (format!("{w} = 0"), w))
    .collect();
    for r in 2..=m {
        for (l, rr) in [
            ("rho.omega.nu.delta", "alpha.beta.gamma.sigma"),
            ("nu.delta.rho.omega", "gamma.sigma.alpha.beta"),
        ] {
            out.push((format!("({l})^{r} = ({rr})^{r}"), format!("({l})^{r} - ({rr})^{r}")));
        }
    }
    out
}

fn identities_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in PRESETS {
        let pres = p.presentation(&cx.params);
        let a = cx.algebra(p)?;
        let failing: Vec<String> = pres
            .relations
            .iter()
            .filter(|r| !a.normal_form(&r.element()).is_zero())
            .map(|r| format!("{} = {}", pres.quiver.fmt_element(&r.lhs), pres.quiver.fmt_element(&r.rhs)))
            .collect();
        out.push(check(
            format!("relations/{p}"),
            failing.is_empty(),
            format!("{} defining relations reduce to 0", pres.relations.len() - failing.len()),
            json!({ "count": pres.relations.len(), "failing": failing }),
        ));
    }
    let m = cx.params.m();
    let field = cx.params.field().clone();
    let a = cx.algebra(Preset::Spherical)?;
    let items = spherical_consequences(m);
    let mut failing = Vec::new();
    for (label, text) in &items {
        let x = parse_element(a.quiver(), &field, text)?;
        let r = a.normal_form(&x);
        if !r.is_zero() {
            failing.push(json!({ "identity": label, "residual": a.quiver().fmt_element(&r) }));
        }
    }
    out.push(check(
        "consequences/spherical",
        failing.is_empty(),
        format!("{} of {} derived identities hold", items.len() - failing.len(), items.len()),
        json!({ "identities": items.iter().map(|x| &x.0).collect::<Vec<_>>(), "failing": failing }),
    ));
    Ok(out)
}

fn symmetric_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let (seed, cap) = (cx.seed, cx.budget.search);
    let mut out = Vec::new();
    for p in PRESETS {
        let st = cx.algebra(p)?.structure();
        let id = format!("symmetric/{p}");
        out.push(match find_symmetrizing_form(st, seed, cap) {
            Some(form) => {
                let recheck = form.check_random_pairs(st, FORM_RECHECK_PAIRS, seed);
                check(
                    id,
                    recheck && form.gram_rank == st.dim(),
                    format!(
                        "Gram rank {} of {}, accepted after {} candidates",
                        form.gram_rank,
                        st.dim(),
                        form.candidates
                    ),
                    json!({
                        "gram_rank": form.gram_rank,
                        "candidates": form.candidates,
                        "random_pairs": FORM_RECHECK_PAIRS,
                        "random_pairs_ok": recheck,
                    }),
                )
            }
            None => Check {
                id,
                status: Status::Inconclusive,
                detail: format!("no nondegenerate trace form within {cap} candidates"),
                data: Value::Null,
                millis: None,
            },
        });
    }
    Ok(out)
}

fn tilting_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let ts = cx.tilting()?;
    let st = cx.algebra(Preset::Tetrahedral)?.structure();
    Ok(match verify_tilting(st, &ts) {
        Ok(r) => vec![
            check(
                "tilting/vanishing",
                true,
                format!("{} shifted Hom spaces vanish", r.shifted_homs.len()),
                json!({ "checked": r.shifted_homs.len(), "support_width": r.support_bound }),
            ),
            check(
                "tilting/generation",
                true,
                format!("projectives generated in order {:?}", r.generation_order),
                json!({ "order": r.generation_order }),
            ),
        ],
        Err(e @ Error::Condition1Failure { .. }) => vec![check("tilting/vanishing", false, e.to_string(), Value::Null)],
        Err(e @ Error::Condition2Failure(_)) => vec![
            check("tilting/vanishing", true, "shifted Hom spaces vanish", Value::Null),
            check("tilting/generation", false, e.to_string(), Value::Null),
        ],
        Err(e) => return Err(e),
    })
}

fn derived_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let m = cx.params.m();
    let ts = cx.tilting()?;
    let lam = cx.algebra(Preset::Tetrahedral)?.clone();
    let st = lam.structure();
    let mut out = Vec::new();
    let end = cx.end()?.clone();
    let expected = Preset::Spherical.expected_dim(m);
    out.push(check(
        "end/dimension",
        end.dim() == expected,
        format!("dim End(T) = {}, expected {expected}", end.dim()),
        json!({ "dim": end.dim(), "expected": expected }),
    ));
    let c = cartan(end.structure());
    let expected_c = Preset::Spherical.expected_cartan(m);
    out.push(check(
        "end/cartan",
        c.0 == expected_c,
        "entry (i, j) is dim Hom(T_j, T_i)",
        json!({ "computed": c, "expected": expected_c }),
    ));

    let lc = cartan(st);
    let mut table = Vec::new();
    let mut mismatches = Vec::new();
    for (i, x) in ts.iter().enumerate() {
        let mut row = Vec::new();
        for (j, y) in ts.iter().enumerate() {
            let h = hom_complexes(st, x, y, 0).dim();
            let e = euler_hom_dimension(x, y, &lc);
            if h as i64 != e {
                mismatches.push(json!({ "from": i + 1, "to": j + 1, "hom": h, "euler": e }));
            }
            row.push(h);
        }
        table.push(row);
    }
    out.push(check(
        "end/euler-form",
        mismatches.is_empty(),
        format!("{} of 36 pairs agree with the alternating Cartan sum", 36 - mismatches.len()),
        json!({ "hom_table": table, "mismatches": mismatches }),
    ));

    let gens = build_generators(&lam, &ts, m)?;
    let rep = verify_spherical_presentation(&end, &gens, &cx.params)?;
    let bad = |v: &[crate::homotopy::NamedCheck]| -> Vec<Value> {
        v.iter()
            .filter(|c| !c.passed)
            .map(|c| json!({ "identity": c.name, "residual": c.residual }))
            .collect()
    };
    let bad_ids = bad(&rep.identities);
    out.push(check(
        "presentation/identities",
        bad_ids.is_empty(),
        format!("{} of {} identities among the generator classes hold", rep.identities.len() - bad_ids.len(), rep.identities.len()),
        json!({ "identities": rep.identities.iter().map(|c| &c.name).collect::<Vec<_>>(), "failing": bad_ids }),
    ));
    let bad_rel = bad(&rep.relations);
    out.push(check(
        "presentation/relations",
        bad_rel.is_empty(),
        format!("{} of {} spherical relations hold after the substitution", rep.relations.len() - bad_rel.len(), rep.relations.len()),
        json!({ "failing": bad_rel }),
    ));
    out.push(check(
        "presentation/generation",
        rep.generated_dim == rep.expected_dim && rep.image_rank == rep.expected_dim,
        format!(
            "generated subalgebra has dim {}, image of the spherical basis has rank {}, expected {}",
            rep.generated_dim, rep.image_rank, rep.expected_dim
        ),
        json!({ "generated_dim": rep.generated_dim, "image_rank": rep.image_rank, "expected": rep.expected_dim }),
    ));
    out.push(check(
        "presentation/arrows",
        rep.arrow_matrix == rep.spherical_arrows,
        "dim e_i (rad/rad^2) e_j of End(T) against the spherical quiver",
        json!({ "computed": rep.arrow_matrix, "expected": rep.spherical_arrows }),
    ));
    Ok(out)
}

fn periodicity_suite(cx: &mut Context) -> Result<Vec<Check>> {
    let (seed, cap) = (cx.seed, cx.budget.search);
    let mut out = Vec::new();
    for p in PRESETS {
        let a = cx.algebra(p)?;
        let mut status = Status::Pass;
        let mut per_vertex = Vec::new();
        for i in 0..a.quiver().num_vertices() {
            let start = simple(a, i);
            let mut cur = start.clone();
            let mut dims = Vec::new();
            let mut early = Vec::new();
            for step in 1..=4 {
                cur = syzygy(a, &cur);
                dims.push(cur.dims().to_vec());
                if step < 4 {
                    early.push(cur.dims() == start.dims());
                }
            }
            let witness = modules_isomorphic(a, &cur, &start, seed, cap);
            let ok = match &witness {
                Some(f) => f.is_invertible() && f.commutes(&cur, &start, a),
                None => false,
            };
            if !ok {
                status = if cur.dims() == start.dims() && status != Status::Fail {
                    Status::Inconclusive
                } else {
                    Status::Fail
                };
            }
            per_vertex.push(json!({
                "vertex": a.quiver().vertex_name(i),
                "dims": dims,
                "same_dims_before_step_4": early,
                "witness": ok,
            }));
        }
        out.push(Check {
            id: format!("periodicity/{p}"),
            status,
            detail: "fourth syzygy of each simple against the simple, with an invertible witness".into(),
            data: json!(per_vertex),
            millis: None,
        });
    }
    Ok(out)
}

/// Runs the requested suite for each `m`. Budget exhaustion while building
/// an algebra is returned as an error; check failures are reported.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut runs = Vec::new();
    let mut complete = true;
    'outer: for &m in &opts.ms {
        let params = PresetParams::new(m, opts.field.clone())?;
        let cap = opts.cap.unwrap_or_else(|| params.default_cap());
        let mut cx = Context {
            params,
            cap,
            budget: opts.budget,
            seed: opts.seed,
            spherical: None,
            tetrahedral: None,
            tilting: None,
            end: None,
        };
        let mut run = Run {
            m,
            degree_cap: cap,
            checks: Vec::new(),
        };
        for part in opts.suite.parts() {
            let t0 = Instant::now();
            let mut checks = match part {
                Suite::Structure => structure_suite(&mut cx)?,
                Suite::Identities => identities_suite(&mut cx)?,
                Suite::Symmetric => symmetric_suite(&mut cx)?,
                Suite::Tilting => tilting_suite(&mut cx)?,
                Suite::DerivedEquivalence => derived_suite(&mut cx)?,
                Suite::Periodicity => periodicity_suite(&mut cx)?,
                Suite::All => unreachable!(),
            };
            if opts.timings {
                let ms = t0.elapsed().as_millis() as u64;
                for c in &mut checks {
                    c.millis = Some(ms);
                }
            }
            let failed = checks.iter().any(|c| c.status == Status::Fail);
            run.checks.extend(checks);
            if failed && !opts.keep_going {
                complete = false;
                runs.push(run);
                break 'outer;
            }
        }
        runs.push(run);
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        suite: opts.suite,
        field: opts.field.kind().to_string(),
        lambda: opts.field.lambda().to_string(),
        seed: opts.seed,
        notes: vec![
            opts.field.closure_note(),
            "Cartan convention: C[i][j] = dim e_i A e_j".into(),
            "periodicity is checked on simple modules in mod A, not on the bimodule A".into(),
        ],
        runs,
        complete,
    })
}
