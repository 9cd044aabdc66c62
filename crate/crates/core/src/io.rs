//! JSON forms of scalars, elements and structures, and the named builtin structures.
//!
//! A structure file is either *explicit* (algebra, `ρ` table, automorphisms, optional twist and
//! trace) or a *builder* description expanded by one of the constructors. Scalars are written in
//! the canonical `num / den` text of the file's symbol table. Writing a loaded structure always
//! produces the explicit form, and reading it back gives the same structure and the same text.

use std::collections::{BTreeMap, HashMap};

use oqa_scalar::{Scalar, SymbolTable};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraElement, AlgebraKind, AlgebraMap, AlgebraSpec, Element, TensorSquare};
use crate::automorphism::Automorphism;
use crate::error::{OqaError, Result};
use crate::homfly::SingleBlock;
use crate::oqa::{build_balanced_mn, sweedler_oqa, uniform_b, OrientedQuantumAlgebra};

fn format_err(msg: impl Into<String>) -> OqaError {
    OqaError::Format(msg.into())
}

/// `{i, j, c}`: one slot of an element of `A⊗A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairTerm {
    pub i: String,
    pub j: String,
    pub c: String,
}

/// `{k, c}`: one coordinate of an element of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub i: String,
    pub j: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraJson {
    Matrix { n: usize },
    Sweedler,
    Custom { labels: Vec<String>, products: Vec<ProductJson>, unit: Vec<Term> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AutomorphismJson {
    Identity,
    /// `E_ij ↦ (ω_i/ω_j)^power E_ij`.
    Scaling { omega_sq: Vec<String>, power: i64 },
    /// Column `j` lists the image of basis element `j`.
    Linear { columns: Vec<Vec<Term>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitJson {
    pub symbols: Vec<String>,
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub opposite: bool,
    pub rho: Vec<PairTerm>,
    pub t_d: AutomorphismJson,
    pub t_u: AutomorphismJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Term>>,
}

/// Off-diagonal parameters `b_iℓ`: one expression for all pairs, or a map from `"i,l"` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BJson {
    Uniform(String),
    PerPair(BTreeMap<String, String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case")]
pub enum BuilderJson {
    /// The balanced family on `M_n` with `ω_i² = (a²/bc)^{i−1} ω_1²`.
    Balanced { n: usize, a: String, bc: String, b: BJson, omega1_sq: String },
    Sweedler { alpha: String },
    /// One block with `a_1 = a` and `a_i = a` (`true`) or `−bc/a` (`false`), `bc = sbc²`.
    SingleBlock { a: String, sbc: String, signs: Vec<bool> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderDoc {
    pub symbols: Vec<String>,
    #[serde(flatten)]
    pub builder: BuilderJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Term>>,
}

/// Values for `--bind name=value`; `symbolic` keeps the symbol free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings {
    entries: Vec<(String, Option<String>)>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    /// Parses `name=value`.
    pub fn push_spec(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| format_err(format!("binding `{spec}` is not of the form name=value")))?;
        let (name, value) = (name.trim(), value.trim());
        if name.is_empty() || value.is_empty() {
            return Err(format_err(format!("binding `{spec}` is incomplete")));
        }
        let value = (value != "symbolic").then(|| value.to_string());
        self.entries.push((name.to_string(), value));
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Resolves against `table`; every name must be declared, later bindings win.
    pub fn resolve(&self, table: &SymbolTable) -> Result<HashMap<usize, Scalar>> {
        let mut out = HashMap::new();
        for (name, value) in &self.entries {
            let idx = table
                .index(name)
                .ok_or_else(|| format_err(format!("binding names undeclared symbol `{name}`")))?;
            match value {
                None => {
                    out.remove(&idx);
                }
                Some(text) => {
                    let v = table.parse(text)?;
                    if v.support().contains(&idx) {
                        return Err(format_err(format!("binding for `{name}` refers to itself")));
                    }
                    out.insert(idx, v);
                }
            }
        }
        Ok(out)
    }
}

/// A structure read from JSON together with its symbol table and trace.
#[derive(Clone, Debug)]
pub struct StructureFile {
    pub symbols: SymbolTable,
    pub structure: OrientedQuantumAlgebra,
    /// Explicit trace functional; `None` means the structure's default.
    pub trace: Option<Vec<Scalar>>,
    /// Set when the file used the single-block builder.
    pub single_block: Option<SingleBlock>,
}

struct Reader<'a> {
    table: &'a SymbolTable,
    bind: HashMap<usize, Scalar>,
}

impl Reader<'_> {
    fn scalar(&self, text: &str) -> Result<Scalar> {
        let v = self.table.parse(text)?;
        Ok(v.substitute(&self.bind)?)
    }

    fn index(alg: &AlgebraSpec, label: &str) -> Result<usize> {
        alg.label_index(label)
            .ok_or_else(|| format_err(format!("unknown basis label `{label}`")))
    }

    fn element(&self, alg: &AlgebraSpec, terms: &[Term]) -> Result<AlgebraElement> {
        let mut c = vec![Scalar::zero(); alg.dim()];
        for t in terms {
            let k = Self::index(alg, &t.k)?;
            c[k] = &c[k] + &self.scalar(&t.c)?;
        }
        Ok(Element::from_scalars(c))
    }

    fn sparse(&self, alg: &AlgebraSpec, terms: &[Term]) -> Result<Vec<(usize, Scalar)>> {
        terms
            .iter()
            .map(|t| Ok((Self::index(alg, &t.k)?, self.scalar(&t.c)?)))
            .collect()
    }

    fn algebra(&self, a: &AlgebraJson, opposite: bool) -> Result<AlgebraSpec> {
        let alg = match a {
            AlgebraJson::Matrix { n } if *n >= 1 => AlgebraSpec::matrix(*n),
            AlgebraJson::Matrix { .. } => return Err(format_err("matrix algebra needs n >= 1")),
            AlgebraJson::Sweedler => AlgebraSpec::sweedler(),
            AlgebraJson::Custom { labels, products, unit } => {
                let dim = labels.len();
                let pos = |l: &str| {
                    labels
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| format_err(format!("unknown basis label `{l}`")))
                };
                let mut c = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
                for p in products {
                    let (i, j) = (pos(&p.i)?, pos(&p.j)?);
                    for t in &p.terms {
                        let k = pos(&t.k)?;
                        c[i][j][k] = &c[i][j][k] + &self.scalar(&t.c)?;
                    }
                }
                let mut u = vec![Scalar::zero(); dim];
                for t in unit {
                    let k = pos(&t.k)?;
                    u[k] = &u[k] + &self.scalar(&t.c)?;
                }
                AlgebraSpec::custom(labels.clone(), c, u)?
            }
        };
        Ok(if opposite { alg.opposite() } else { alg })
    }

    fn automorphism(&self, alg: &AlgebraSpec, a: &AutomorphismJson) -> Result<Automorphism> {
        Ok(match a {
            AutomorphismJson::Identity => Automorphism::Identity,
            AutomorphismJson::Scaling { omega_sq, power } => {
                if alg.matrix_size() != Some(omega_sq.len()) {
                    return Err(format_err("scaling automorphisms need one ω² per row of M_n"));
                }
                let omega_sq = omega_sq.iter().map(|s| self.scalar(s)).collect::<Result<_>>()?;
                Automorphism::Scaling { omega_sq, power: *power }
            }
            AutomorphismJson::Linear { columns } => {
                if columns.len() != alg.dim() {
                    return Err(OqaError::Dimension { expected: alg.dim(), found: columns.len() });
                }
                let cols = columns.iter().map(|c| self.sparse(alg, c)).collect::<Result<_>>()?;
                Automorphism::Linear(AlgebraMap::from_columns(cols))
            }
        })
    }

    fn trace(&self, alg: &AlgebraSpec, terms: &Option<Vec<Term>>) -> Result<Option<Vec<Scalar>>> {
        terms
            .as_ref()
            .map(|t| Ok(self.element(alg, t)?.coeffs().to_vec()))
            .transpose()
    }
}

fn table(symbols: &[String]) -> Result<SymbolTable> {
    Ok(SymbolTable::new(symbols.iter().map(String::as_str))?)
}

impl StructureFile {
    /// Reads either JSON form, substituting `bindings` into every scalar.
    pub fn from_json_str(text: &str, bindings: &Bindings) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| format_err(format!("malformed JSON: {e}")))?;
        let bad = |e: serde_json::Error| format_err(format!("invalid structure file: {e}"));
        if value.get("builder").is_some() {
            let doc: BuilderDoc = serde_json::from_value(value).map_err(bad)?;
            Self::from_builder(&doc, bindings)
        } else {
            let doc: ExplicitJson = serde_json::from_value(value).map_err(bad)?;
            Self::from_explicit(&doc, bindings)
        }
    }

    pub fn from_explicit(doc: &ExplicitJson, bindings: &Bindings) -> Result<Self> {
        let symbols = table(&doc.symbols)?;
        let r = Reader { bind: bindings.resolve(&symbols)?, table: &symbols };
        let alg = r.algebra(&doc.algebra, doc.opposite)?;
        let mut rho = TensorSquare::zero(alg.dim());
        for t in &doc.rho {
            rho.add_term(Reader::index(&alg, &t.i)?, Reader::index(&alg, &t.j)?, r.scalar(&t.c)?);
        }
        let t_d = r.automorphism(&alg, &doc.t_d)?;
        let t_u = r.automorphism(&alg, &doc.t_u)?;
        let trace = r.trace(&alg, &doc.trace)?;
        let twist = doc.twist.as_ref().map(|g| r.element(&alg, g)).transpose()?;
        let mut structure = OrientedQuantumAlgebra::new(alg, rho, t_d, t_u)?;
        if let Some(g) = twist {
            structure = structure.attach_twist(g)?;
        }
        Ok(StructureFile { symbols, structure, trace, single_block: None })
    }

    pub fn from_builder(doc: &BuilderDoc, bindings: &Bindings) -> Result<Self> {
        let symbols = table(&doc.symbols)?;
        let r = Reader { bind: bindings.resolve(&symbols)?, table: &symbols };
        let mut single_block = None;
        let structure = match &doc.builder {
            BuilderJson::Balanced { n, a, bc, b, omega1_sq } => {
                let b = match b {
                    BJson::Uniform(v) => uniform_b(*n, &r.scalar(v)?),
                    BJson::PerPair(m) => {
                        let mut out = BTreeMap::new();
                        for (k, v) in m {
                            let (i, l) = k
                                .split_once(',')
                                .and_then(|(i, l)| Some((i.trim().parse::<usize>().ok()?, l.trim().parse::<usize>().ok()?)))
                                .filter(|&(i, l)| 1 <= i && i < l && l <= *n)
                                .ok_or_else(|| format_err(format!("bad b index `{k}`")))?;
                            out.insert((i - 1, l - 1), r.scalar(v)?);
                        }
                        out
                    }
                };
                build_balanced_mn(*n, &r.scalar(a)?, &r.scalar(bc)?, &b, &r.scalar(omega1_sq)?)?
            }
            BuilderJson::Sweedler { alpha } => sweedler_oqa(&r.scalar(alpha)?)?,
            BuilderJson::SingleBlock { a, sbc, signs } => {
                let ctx = SingleBlock::new(&r.scalar(a)?, &r.scalar(sbc)?, signs)?;
                let s = ctx.structure()?;
                single_block = Some(ctx);
                s
            }
        };
        let trace = r.trace(structure.algebra(), &doc.trace)?;
        Ok(StructureFile { symbols, structure, trace, single_block })
    }

    /// The explicit form.
    pub fn to_explicit(&self) -> ExplicitJson {
        let t = &self.symbols;
        let s = &self.structure;
        let alg = s.algebra();
        let algebra = match alg.kind() {
            AlgebraKind::Matrix { n } => AlgebraJson::Matrix { n: *n },
            AlgebraKind::Sweedler => AlgebraJson::Sweedler,
            AlgebraKind::Custom => {
                let base = if alg.is_opposite() { alg.opposite() } else { alg.clone() };
                let mut products = Vec::new();
                for i in 0..base.dim() {
                    for j in 0..base.dim() {
                        let terms = sparse_terms(&base, t, base.basis_product(i, j));
                        if !terms.is_empty() {
                            products.push(ProductJson { i: base.labels()[i].clone(), j: base.labels()[j].clone(), terms });
                        }
                    }
                }
                AlgebraJson::Custom {
                    labels: base.labels().to_vec(),
                    products,
                    unit: sparse_terms(&base, t, &base.unit_terms()),
                }
            }
        };
        ExplicitJson {
            symbols: t.names().to_vec(),
            algebra,
            opposite: alg.is_opposite(),
            rho: pair_terms(alg, t, s.rho()),
            t_d: automorphism_json(alg, t, s.t_d()),
            t_u: automorphism_json(alg, t, s.t_u()),
            twist: s.twist().map(|g| element_terms(alg, t, g.g())),
            trace: self.trace.as_ref().map(|tr| element_terms(alg, t, &Element::from_scalars(tr.clone()))),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self.to_explicit()).expect("structure JSON is serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("structure JSON is serializable")
    }

    /// The trace used for closed diagrams: the file's, else the structure's default.
    pub fn effective_trace(&self) -> Option<Vec<Scalar>> {
        self.trace.clone().or_else(|| self.structure.default_trace())
    }
}

fn sparse_terms(alg: &AlgebraSpec, t: &SymbolTable, terms: &[(usize, Scalar)]) -> Vec<Term> {
    terms
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Term { k: alg.labels()[*k].clone(), c: t.format(c) })
        .collect()
}

/// Nonzero coordinates of `x` as `{k, c}` terms in basis order.
pub fn element_terms(alg: &AlgebraSpec, t: &SymbolTable, x: &AlgebraElement) -> Vec<Term> {
    let terms: Vec<(usize, Scalar)> = x.coeffs().iter().cloned().enumerate().collect();
    sparse_terms(alg, t, &terms)
}

/// Nonzero slots of `x ∈ A⊗A` as `{i, j, c}` terms in basis order.
pub fn pair_terms(alg: &AlgebraSpec, t: &SymbolTable, x: &TensorSquare<Scalar>) -> Vec<PairTerm> {
    x.entries()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| PairTerm { i: alg.labels()[*i].clone(), j: alg.labels()[*j].clone(), c: t.format(c) })
        .collect()
}

fn automorphism_json(alg: &AlgebraSpec, t: &SymbolTable, a: &Automorphism) -> AutomorphismJson {
    match a {
        Automorphism::Identity => AutomorphismJson::Identity,
        Automorphism::Scaling { omega_sq, power } => AutomorphismJson::Scaling {
            omega_sq: omega_sq.iter().map(|w| t.format(w)).collect(),
            power: *power,
        },
        Automorphism::Linear(m) => AutomorphismJson::Linear {
            columns: (0..m.dim()).map(|j| sparse_terms(alg, t, m.column(j))).collect(),
        },
    }
}

/// Short name of an algebra: `M_2`, `H_4`, `custom(3)`, with `^op` for opposites.
pub fn algebra_name(alg: &AlgebraSpec) -> String {
    let base = match alg.kind() {
        AlgebraKind::Matrix { n } => format!("M_{n}"),
        AlgebraKind::Sweedler => "H_4".to_string(),
        AlgebraKind::Custom => format!("custom({})", alg.dim()),
    };
    if alg.is_opposite() {
        format!("{base}^op")
    } else {
        base
    }
}

const BUILTIN_STRUCTURES: &[(&str, &str)] = &[
    (
        "balanced-n2",
        r#"{"symbols": ["a", "sbc", "w1"], "builder": "balanced", "n": 2, "a": "a", "bc": "sbc^2", "b": "sbc", "omega1_sq": "w1"}"#,
    ),
    (
        "balanced-n3",
        r#"{"symbols": ["a", "sbc", "w1"], "builder": "balanced", "n": 3, "a": "a", "bc": "sbc^2", "b": "sbc", "omega1_sq": "w1"}"#,
    ),
    ("sweedler", r#"{"symbols": ["alpha"], "builder": "sweedler", "alpha": "alpha"}"#),
    (
        "single-block-n2",
        r#"{"symbols": ["a", "sbc"], "builder": "single_block", "a": "a", "sbc": "sbc", "signs": [true, true]}"#,
    ),
    (
        "single-block-n3",
        r#"{"symbols": ["a", "sbc"], "builder": "single_block", "a": "a", "sbc": "sbc", "signs": [true, true, false]}"#,
    ),
    (
        "alexander-n2",
        r#"{"symbols": ["a", "sbc"], "builder": "single_block", "a": "a", "sbc": "sbc", "signs": [true, false]}"#,
    ),
];

pub fn builtin_structure_names() -> Vec<&'static str> {
    BUILTIN_STRUCTURES.iter().map(|(n, _)| *n).collect()
}

/// The builder JSON of a named builtin structure.
pub fn builtin_structure(name: &str) -> Option<&'static str> {
    BUILTIN_STRUCTURES.iter().find(|(n, _)| *n == name).map(|(_, j)| *j)
}
