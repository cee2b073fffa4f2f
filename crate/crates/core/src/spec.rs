//! The algebra spec-file format (TOML) and its translation into validated
//! algebras and decompositions.
//!
//! ```toml
//! [field]
//! conductor = 1
//!
//! [group]
//! orders = [2]
//!
//! [[basis]]
//! label = "1"
//! degree = [0]
//!
//! [[basis]]
//! label = "u"
//! degree = [1]
//!
//! [[products]]
//! left = "u"
//! right = "u"
//! terms = [["1", "1"]]
//! ```
//!
//! Blocks are either raw label sets (`members`, optionally with a `model`
//! identifying them with a constructed graded-simple algebra) or
//! `kind = "bsz"` records that generate their own basis and products.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{validate_wedderburn, Block, GradedAlgebra, WedderburnData, WedderburnSummary};
use crate::bsz::{build_g_simple, BlockModel, BszData, Triple};
use crate::cyclo::{CycloScalar, RootOfUnity};
use crate::error::{domain, structural, Error, Result};
use crate::group::{AbelianGroup, AlternatingForm, GroupElement};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub field: Option<FieldSpec>,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub basis: Vec<BasisSpec>,
    #[serde(default)]
    pub products: Vec<ProductSpec>,
    #[serde(default)]
    pub blocks: Vec<BlockSpec>,
    pub radical: Option<RadicalSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub conductor: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub label: Spanned<String>,
    pub degree: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: Spanned<String>,
    pub right: Spanned<String>,
    pub terms: Vec<(Spanned<String>, Spanned<String>)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub kind: Option<String>,
    /// Label prefix for generated basis elements of a `bsz` block.
    pub name: Option<String>,
    pub members: Option<Vec<Spanned<String>>>,
    pub model: Option<ModelSpec>,
    #[serde(flatten)]
    pub bsz: Option<BszSpec>,
}

#[derive(Debug, Deserialize)]
pub struct BszSpec {
    #[serde(default)]
    pub h_gens: Vec<Vec<i64>>,
    #[serde(default)]
    pub alpha: Vec<AlphaEntry>,
    pub k: Option<usize>,
    pub gtuple: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    /// 1-based generator indices with `i < j`.
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default)]
    pub h_gens: Vec<Vec<i64>>,
    #[serde(default)]
    pub alpha: Vec<AlphaEntry>,
    pub gtuple: Vec<Vec<i64>>,
    /// Member label -> triple with 1-based `i`, `j`.
    pub assign: BTreeMap<String, TripleSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    /// Defaults to the identity.
    #[serde(default)]
    pub h: Vec<i64>,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadicalSpec {
    pub members: Vec<Spanned<String>>,
}

/// A parsed and built spec file.
#[derive(Clone, Debug)]
pub struct BuiltSpec {
    pub algebra: GradedAlgebra,
    /// `None` when the file declares neither blocks nor a radical.
    pub wedderburn: Option<WedderburnData>,
    /// The `bsz` records of the file, in block order.
    pub bsz: Vec<BszData>,
}

impl BuiltSpec {
    pub fn validate(&self) -> Result<Option<WedderburnSummary>> {
        self.wedderburn.as_ref().map(|w| validate_wedderburn(&self.algebra, w)).transpose()
    }

    pub fn require_wedderburn(&self) -> Result<&WedderburnData> {
        self.wedderburn
            .as_ref()
            .ok_or_else(|| domain!("the spec file declares no blocks or radical"))
    }
}

fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

pub fn parse_spec(text: &str, path: &str) -> Result<AlgebraSpecFile> {
    let file: AlgebraSpecFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map(|s| locate(text, s.start)).unwrap_or((1, 1));
        Error::Parse { path: path.into(), line, column, message: e.message().trim().to_string() }
    })?;
    if file.group.is_none() {
        return Err(Error::Parse { path: path.into(), line: 1, column: 1, message: "missing group".into() });
    }
    Ok(file)
}

pub fn load_spec(path: &std::path::Path) -> Result<(String, BuiltSpec)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let built = build_spec(&text, &path.display().to_string())?;
    Ok((text, built))
}

pub fn build_spec(text: &str, path: &str) -> Result<BuiltSpec> {
    let file = parse_spec(text, path)?;
    Builder { text, path, file: &file }.build()
}

struct Builder<'a> {
    text: &'a str,
    path: &'a str,
    file: &'a AlgebraSpecFile,
}

impl Builder<'_> {
    fn at<T>(&self, s: &Spanned<T>, message: String) -> Error {
        let (line, column) = locate(self.text, s.span().start);
        Error::Parse { path: self.path.into(), line, column, message }
    }

    fn build(&self) -> Result<BuiltSpec> {
        let group = AbelianGroup::new(self.file.group.as_ref().expect("checked").orders.clone())?;
        let mut bsz = Vec::new();
        for (n, b) in self.file.blocks.iter().enumerate() {
            match b.kind.as_deref() {
                None | Some("raw") => {
                    if b.members.is_none() {
                        return Err(structural!("block {} has no members", n + 1));
                    }
                }
                Some("bsz") => {
                    if b.members.is_some() || b.model.is_some() {
                        return Err(structural!("bsz block {} generates its members; drop `members` and `model`", n + 1));
                    }
                    let spec = b.bsz.as_ref().ok_or_else(|| structural!("bsz block {} has no data", n + 1))?;
                    let gtuple = spec.gtuple.as_ref().ok_or_else(|| structural!("bsz block {} needs `gtuple`", n + 1))?;
                    let data = bsz_data(&group, &spec.h_gens, &spec.alpha, gtuple)?;
                    if let Some(k) = spec.k {
                        if k != data.k() {
                            return Err(structural!("bsz block {}: k = {k} but gtuple has {} entries", n + 1, data.k()));
                        }
                    }
                    bsz.push((n, data));
                }
                Some(other) => return Err(structural!("unknown block kind `{other}`")),
            }
        }
        let mut conductor = self.file.field.as_ref().map(|f| f.conductor);
        let needed = bsz.iter().fold(1u32, |acc, (_, d)| acc.lcm(&d.conductor()));
        match conductor {
            Some(0) => return Err(structural!("conductor must be positive")),
            Some(c) if c % needed != 0 => {
                return Err(structural!("field conductor {c} does not contain the block conductor {needed}"))
            }
            Some(_) => {}
            None => conductor = Some(needed),
        }
        let conductor = conductor.expect("set above");

        let mut labels: Vec<String> = Vec::new();
        let mut degrees: Vec<GroupElement> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        for b in &self.file.basis {
            let label = b.label.get_ref().clone();
            if index.contains_key(&label) {
                return Err(self.at(&b.label, format!("duplicate basis label `{label}`")));
            }
            let degree = group.element(&b.degree).map_err(|e| self.at(&b.label, e.to_string()))?;
            index.insert(label.clone(), labels.len());
            labels.push(label);
            degrees.push(degree);
        }
        let mut products: Vec<(usize, usize, Vec<(usize, CycloScalar)>)> = Vec::new();
        let mut generated: Vec<(usize, Vec<usize>, BszData)> = Vec::new();
        for (n, data) in &bsz {
            let (alg, _) = build_g_simple(data)?;
            let prefix = self.file.blocks[*n].name.as_ref().map(|s| format!("{s}.")).unwrap_or_default();
            let base = labels.len();
            for i in 0..alg.dim() {
                let label = format!("{prefix}{}", alg.label(i));
                if index.contains_key(&label) {
                    return Err(structural!("generated label `{label}` collides with an existing label"));
                }
                index.insert(label.clone(), labels.len());
                labels.push(label);
                degrees.push(alg.degree(i).clone());
            }
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let terms = alg.basis_product(i, j);
                    if !terms.is_empty() {
                        let terms = terms.iter().map(|(k, c)| Ok((base + k, c.embed(conductor)?))).collect::<Result<_>>()?;
                        products.push((base + i, base + j, terms));
                    }
                }
            }
            generated.push((*n, (base..base + alg.dim()).collect(), data.clone()));
        }
        let lookup = |s: &Spanned<String>| -> Result<usize> {
            index
                .get(s.get_ref())
                .copied()
                .ok_or_else(|| self.at(s, format!("unknown basis label `{}`", s.get_ref())))
        };
        let mut declared: HashMap<(usize, usize), &Spanned<String>> = HashMap::new();
        for p in &self.file.products {
            let (i, j) = (lookup(&p.left)?, lookup(&p.right)?);
            if declared.insert((i, j), &p.left).is_some() || products.iter().any(|(a, b, _)| (*a, *b) == (i, j)) {
                return Err(self.at(&p.left, format!("product {}*{} is declared twice", p.left.get_ref(), p.right.get_ref())));
            }
            let mut terms = Vec::with_capacity(p.terms.len());
            for (target, lit) in &p.terms {
                let k = lookup(target)?;
                let c = CycloScalar::parse(lit.get_ref(), conductor).map_err(|e| self.at(lit, e.to_string()))?;
                terms.push((k, c));
            }
            products.push((i, j, terms));
        }
        let algebra = GradedAlgebra::new(group.clone(), conductor, labels, degrees, products)?;

        let wedderburn = if self.file.blocks.is_empty() && self.file.radical.is_none() {
            None
        } else {
            let mut blocks = Vec::with_capacity(self.file.blocks.len());
            for (n, b) in self.file.blocks.iter().enumerate() {
                if let Some((_, members, data)) = generated.iter().find(|(m, _, _)| *m == n) {
                    blocks.push(Block { members: members.clone(), model: Some(BlockModel { data: data.clone(), assignment: data.basis_triples() }) });
                    continue;
                }
                let members = b.members.as_ref().expect("checked").iter().map(lookup).collect::<Result<Vec<_>>>()?;
                let model = match &b.model {
                    None => None,
                    Some(m) => Some(self.model(&group, m, b.members.as_ref().expect("checked"), n)?),
                };
                blocks.push(Block { members, model });
            }
            let radical = match &self.file.radical {
                None => Vec::new(),
                Some(r) => r.members.iter().map(lookup).collect::<Result<_>>()?,
            };
            Some(WedderburnData { blocks, radical })
        };
        Ok(BuiltSpec { algebra, wedderburn, bsz: bsz.into_iter().map(|(_, d)| d).collect() })
    }

    fn model(&self, group: &AbelianGroup, m: &ModelSpec, members: &[Spanned<String>], n: usize) -> Result<BlockModel> {
        let data = bsz_data(group, &m.h_gens, &m.alpha, &m.gtuple)?;
        let mut assignment = Vec::with_capacity(members.len());
        for label in members {
            let t = m
                .assign
                .get(label.get_ref())
                .ok_or_else(|| self.at(label, format!("block {} model does not assign `{}`", n + 1, label.get_ref())))?;
            if t.i == 0 || t.j == 0 || t.i > data.k() || t.j > data.k() {
                return Err(self.at(label, format!("matrix position ({}, {}) out of range 1..={}", t.i, t.j, data.k())));
            }
            let h = if t.h.is_empty() {
                group.identity()
            } else {
                group.element(&t.h).map_err(|e| self.at(label, e.to_string()))?
            };
            if !data.subgroup().contains(&h) {
                return Err(self.at(label, format!("{h} is not in the model's subgroup")));
            }
            assignment.push(Triple { h, i: t.i - 1, j: t.j - 1 });
        }
        if m.assign.len() != members.len() {
            return Err(structural!("block {} model assigns {} labels for {} members", n + 1, m.assign.len(), members.len()));
        }
        Ok(BlockModel { data, assignment })
    }
}

fn bsz_data(group: &AbelianGroup, h_gens: &[Vec<i64>], alpha: &[AlphaEntry], gtuple: &[Vec<i64>]) -> Result<BszData> {
    let gens = h_gens.iter().map(|e| group.element(e)).collect::<Result<Vec<_>>>()?;
    let mut values = BTreeMap::new();
    for a in alpha {
        if a.i == 0 || a.j == 0 {
            return Err(structural!("alpha indices are 1-based"));
        }
        values.insert((a.i - 1, a.j - 1), RootOfUnity::parse(&a.value)?);
    }
    let form = AlternatingForm::new(group, gens, values)?;
    let tuple = gtuple.iter().map(|e| group.element(e)).collect::<Result<Vec<_>>>()?;
    BszData::new(form, tuple)
}

/// Raw structure-constant form of an algebra (and its blocks) in the
/// spec-file format.
pub fn emit_raw(a: &GradedAlgebra, w: Option<&WedderburnData>) -> String {
    let mut out = String::new();
    out.push_str(&format!("[field]\nconductor = {}\n\n", a.conductor()));
    let orders: Vec<String> = a.group().orders().iter().map(u32::to_string).collect();
    out.push_str(&format!("[group]\norders = [{}]\n", orders.join(", ")));
    let vec_lit = |g: &GroupElement| {
        let parts: Vec<String> = g.exponents().iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(", "))
    };
    for i in 0..a.dim() {
        out.push_str(&format!("\n[[basis]]\nlabel = {:?}\ndegree = {}\n", a.label(i), vec_lit(a.degree(i))));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.basis_product(i, j);
            if p.is_empty() {
                continue;
            }
            let terms: Vec<String> = p.iter().map(|(k, c)| format!("[{:?}, {:?}]", a.label(*k), c.to_string())).collect();
            out.push_str(&format!(
                "\n[[products]]\nleft = {:?}\nright = {:?}\nterms = [{}]\n",
                a.label(i),
                a.label(j),
                terms.join(", ")
            ));
        }
    }
    if let Some(w) = w {
        for b in &w.blocks {
            let members: Vec<String> = b.members.iter().map(|&i| format!("{:?}", a.label(i))).collect();
            out.push_str(&format!("\n[[blocks]]\nmembers = [{}]\n", members.join(", ")));
            if let Some(m) = &b.model {
                let gens: Vec<String> = m.data.alpha().generators().iter().map(vec_lit).collect();
                let tuple: Vec<String> = m.data.gtuple().iter().map(vec_lit).collect();
                out.push_str(&format!("\n[blocks.model]\nh_gens = [{}]\ngtuple = [{}]\n", gens.join(", "), tuple.join(", ")));
                let alpha: Vec<String> = m
                    .data
                    .alpha()
                    .values()
                    .iter()
                    .map(|((i, j), v)| format!("{{ i = {}, j = {}, value = {:?} }}", i + 1, j + 1, v.to_string()))
                    .collect();
                out.push_str(&format!("alpha = [{}]\n", alpha.join(", ")));
                out.push_str("\n[blocks.model.assign]\n");
                for (t, &i) in m.assignment.iter().zip(&b.members) {
                    out.push_str(&format!(
                        "{:?} = {{ h = {}, i = {}, j = {} }}\n",
                        a.label(i),
                        vec_lit(&t.h),
                        t.i + 1,
                        t.j + 1
                    ));
                }
            }
        }
        let radical: Vec<String> = w.radical.iter().map(|&i| format!("{:?}", a.label(i))).collect();
        out.push_str(&format!("\n[radical]\nmembers = [{}]\n", radical.join(", ")));
    }
    out
}
