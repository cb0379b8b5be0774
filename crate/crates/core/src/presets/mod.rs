//! Built-in presentations: the spherical algebras `S(m, λ)` on a six-vertex
//! quiver with two 4-cycles, and the tetrahedral algebras `Λ(m, λ)` on the
//! quiver of a tetrahedron, together with a text format for other inputs.

mod format;

pub use format::{parse_element, parse_presentation, parse_relation, serialize_presentation};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quiver::{AlgebraElement, Quiver};
use crate::rewrite::{build_algebra_auto, QuotientAlgebra, DEFAULT_RULE_BUDGET};

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

impl Relation {
    /// `lhs − rhs`, the generator of the ideal.
    pub fn element(&self) -> AlgebraElement {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn elements(&self) -> Vec<AlgebraElement> {
        self.relations.iter().map(Relation::element).collect()
    }

    /// Builds the quotient algebra, raising the degree cap if needed.
    pub fn build(&self, field: &FieldSpec, degree_cap: usize, budget: usize) -> Result<QuotientAlgebra> {
        build_algebra_auto(&self.quiver, field, &self.elements(), degree_cap, budget)
    }
}

/// Degree, deformation parameter and ground field of a preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetParams {
    m: usize,
    field: FieldSpec,
}

impl PresetParams {
    /// Requires `m ≥ 2`.
    pub fn new(m: usize, field: FieldSpec) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!(
                "degree m = {m} is not supported (m must be at least 2)"
            )));
        }
        Ok(PresetParams { m, field })
    }

    /// Also accepts `m = 1`; for exploration only.
    pub fn with_override(m: usize, field: FieldSpec) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("degree m must be positive".into()));
        }
        Ok(PresetParams { m, field })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `4m + 4`, above the length of the longest nonzero path.
    pub fn default_cap(&self) -> usize {
        4 * self.m + 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Spherical,
    Tetrahedral,
}

impl Preset {
    pub fn presentation(self, params: &PresetParams) -> Presentation {
        match self {
            Preset::Spherical => spherical(params),
            Preset::Tetrahedral => tetrahedral(params).0,
        }
    }

    /// Dimension predicted for the preset.
    pub fn expected_dim(self, m: usize) -> usize {
        match self {
            Preset::Spherical => 36 * m + 4,
            Preset::Tetrahedral => 36 * m,
        }
    }

    /// Predicted `dim e_i A e_j`.
    pub fn expected_cartan(self, m: usize) -> Vec<Vec<usize>> {
        let (a, b, c) = (m + 1, m, m - 1);
        match self {
            Preset::Spherical => vec![
                vec![a, b, a, b, b, b],
                vec![b, a, b, b, b, c],
                vec![a, b, a, b, b, b],
                vec![b, b, b, a, c, b],
                vec![b, b, b, c, a, b],
                vec![b, c, b, b, b, a],
            ],
            Preset::Tetrahedral => vec![
                vec![a, c, b, b, b, b],
                vec![c, a, b, b, b, b],
                vec![b, b, a, c, b, b],
                vec![b, b, c, a, b, b],
                vec![b, b, b, b, a, c],
                vec![b, b, b, b, c, a],
            ],
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spherical" | "s" => Ok(Preset::Spherical),
            "tetrahedral" | "lambda" | "t" => Ok(Preset::Tetrahedral),
            _ => Err(Error::InvalidParams(format!("unknown preset '{s}'"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Spherical => "spherical",
            Preset::Tetrahedral => "tetrahedral",
        })
    }
}

pub const SPHERICAL_VERTICES: [&str; 6] = ["1", "2", "3", "4", "5", "6"];

pub const SPHERICAL_ARROWS: [(&str, &str, &str); 8] = [
    ("alpha", "1", "2"),
    ("beta", "2", "3"),
    ("gamma", "3", "4"),
    ("sigma", "4", "1"),
    ("delta", "5", "1"),
    ("nu", "3", "5"),
    ("rho", "1", "6"),
    ("omega", "6", "3"),
];

/// The quiver of `Λ`. Arrow endpoints are forced by the typing of the
/// binomial relations: for instance `delta.eta = nu.omega` with
/// `delta: 1 -> 5`, `eta: 5 -> 4` forces `nu: 1 -> 6`, `omega: 6 -> 4`.
pub const TETRAHEDRAL_ARROWS: [(&str, &str, &str); 12] = [
    ("delta", "1", "5"),
    ("nu", "1", "6"),
    ("epsilon", "2", "5"),
    ("rho", "2", "6"),
    ("sigma", "3", "2"),
    ("alpha", "3", "1"),
    ("gamma", "4", "1"),
    ("beta", "4", "2"),
    ("xi", "5", "3"),
    ("eta", "5", "4"),
    ("omega", "6", "4"),
    ("mu", "6", "3"),
];

const TETRAHEDRAL_F_ORBITS: [[&str; 3]; 4] = [
    ["gamma", "delta", "eta"],
    ["epsilon", "xi", "sigma"],
    ["rho", "omega", "beta"],
    ["nu", "mu", "alpha"],
];

const TETRAHEDRAL_G_ORBITS: [[&str; 3]; 4] = [
    ["delta", "xi", "alpha"],
    ["nu", "omega", "gamma"],
    ["epsilon", "eta", "beta"],
    ["rho", "mu", "sigma"],
];

fn relations_from(quiver: &Quiver, field: &FieldSpec, lines: &[String]) -> Vec<Relation> {
    lines
        .iter()
        .map(|l| parse_relation(quiver, field, l).expect("built-in relation parses"))
        .collect()
}

/// `S(m, λ)`.
pub fn spherical(params: &PresetParams) -> Presentation {
    let quiver = Quiver::new(&SPHERICAL_VERTICES, &SPHERICAL_ARROWS).expect("static quiver");
    let (m, k) = (params.m, params.m - 1);
    let lines = [
        format!("beta.nu.delta = beta.gamma.sigma + L*(beta.gamma.sigma.alpha)^{k}.beta.gamma.sigma"),
        "alpha.beta.nu = rho.omega.nu".to_string(),
        format!("nu.delta.alpha = gamma.sigma.alpha + L*(gamma.sigma.alpha.beta)^{k}.gamma.sigma.alpha"),
        "delta.alpha.beta = delta.rho.omega".to_string(),
        format!("sigma.rho.omega = sigma.alpha.beta + L*(sigma.alpha.beta.gamma)^{k}.sigma.alpha.beta"),
        "omega.gamma.sigma = omega.nu.delta".to_string(),
        format!("rho.omega.gamma = alpha.beta.gamma + L*(alpha.beta.gamma.sigma)^{k}.alpha.beta.gamma"),
        "gamma.sigma.rho = nu.delta.rho".to_string(),
        format!("(alpha.beta.gamma.sigma)^{m}.alpha = 0"),
        format!("(gamma.sigma.alpha.beta)^{m}.gamma = 0"),
    ];
    let relations = relations_from(&quiver, &params.field, &lines);
    Presentation { quiver, relations }
}

/// The two permutations of the arrows of the tetrahedral quiver: `f` runs
/// along the shaded triangles and `g` along the white ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationData {
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

impl TriangulationData {
    fn from_orbits(quiver: &Quiver, f: &[[&str; 3]], g: &[[&str; 3]]) -> Self {
        let perm = |orbits: &[[&str; 3]]| {
            let mut p = vec![usize::MAX; quiver.num_arrows()];
            for orbit in orbits {
                for i in 0..3 {
                    let a = quiver.arrow_id(orbit[i]).expect("known arrow");
                    p[a] = quiver.arrow_id(orbit[(i + 1) % 3]).expect("known arrow");
                }
            }
            p
        };
        TriangulationData {
            f: perm(f),
            g: perm(g),
        }
    }

    /// The other arrow starting where `a` starts.
    pub fn partner(&self, quiver: &Quiver, a: usize) -> usize {
        let s = quiver.arrow(a).source;
        quiver
            .arrows_from(s)
            .find(|&b| b != a)
            .expect("every vertex has two outgoing arrows")
    }

    /// `(θ f(θ) f²(θ))^{m−1} θ f(θ) g(f(θ))` as arrow indices.
    pub fn zero_word(&self, theta: usize, m: usize) -> Vec<usize> {
        let f1 = self.f[theta];
        let f2 = self.f[f1];
        let mut w = Vec::with_capacity(3 * m);
        for _ in 1..m {
            w.extend([theta, f1, f2]);
        }
        w.extend([theta, f1, self.g[f1]]);
        w
    }
}

/// `Λ(m, λ)` and its triangulation data.
pub fn tetrahedral(params: &PresetParams) -> (Presentation, TriangulationData) {
    let quiver = Quiver::new(&SPHERICAL_VERTICES, &TETRAHEDRAL_ARROWS).expect("static quiver");
    let k = params.m - 1;
    let mut lines = vec![
        format!("gamma.delta = beta.epsilon + L*(beta.rho.omega)^{k}.beta.epsilon"),
        "delta.eta = nu.omega".to_string(),
        "eta.gamma = xi.alpha".to_string(),
        "nu.mu = delta.xi".to_string(),
        format!("rho.omega = epsilon.eta + L*(epsilon.xi.sigma)^{k}.epsilon.eta"),
        "omega.beta = mu.sigma".to_string(),
        "beta.rho = gamma.nu".to_string(),
        "mu.alpha = omega.gamma".to_string(),
        format!("xi.sigma = eta.beta + L*(eta.gamma.delta)^{k}.eta.beta"),
        "sigma.epsilon = alpha.delta".to_string(),
        "epsilon.xi = rho.mu".to_string(),
        "alpha.nu = sigma.rho".to_string(),
    ];
    let data = TriangulationData::from_orbits(&quiver, &TETRAHEDRAL_F_ORBITS, &TETRAHEDRAL_G_ORBITS);
    for theta in 0..quiver.num_arrows() {
        let word: Vec<&str> = data
            .zero_word(theta, params.m)
            .into_iter()
            .map(|a| quiver.arrow(a).name.as_str())
            .collect();
        lines.push(format!("{} = 0", word.join(".")));
    }
    let relations = relations_from(&quiver, &params.field, &lines);
    (Presentation { quiver, relations }, data)
}

/// Builds a preset with its default degree cap and rule budget.
pub fn build_preset(preset: Preset, params: &PresetParams) -> Result<QuotientAlgebra> {
    preset
        .presentation(params)
        .build(&params.field, params.default_cap(), DEFAULT_RULE_BUDGET)
}
