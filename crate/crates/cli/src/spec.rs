//! The JSON spec format: a lossless, deterministic rendering of a tabulated structure with
//! optional action and pairing sections. Scalars are strings such as `"1/2"` or `"1/2+3/4*i"`.

use std::collections::{BTreeMap, HashMap};

use anyhow::{anyhow, bail, Context, Result};
use mha_core::algebras::{GradedElement, Grading, Key, Tensor};
use mha_core::cograded::Action;
use mha_core::exact::Matrix;
use mha_core::groups::{Elem, Group, SelfAction, Window};
use mha_core::hopf::{Indexing, Tabulated};
use mha_core::Q;
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "mha-spec/1";

/// `[element, index]`
pub type KeySpec = (String, usize);
/// `[element, index, coefficient]`
pub type Term = (String, usize, String);
/// `[[element, index], [element, index], coefficient]`
pub type TensorTerm = (KeySpec, KeySpec, String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub format: String,
    pub name: String,
    pub group: GroupSpec,
    pub grading: GradingSpec,
    pub indexing: IndexingSpec,
    pub components: Vec<ComponentSpec>,
    pub units: Vec<UnitSpec>,
    pub products: Vec<ProductSpec>,
    pub delta_blocks: Vec<BlockSpec>,
    pub counit: Vec<Term>,
    pub antipode: Vec<ImageSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<ImageSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub label: String,
    pub elements: Vec<String>,
    /// `table[a][b]` names `a·b`.
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradingSpec {
    Cograded,
    GradedSide,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexingSpec {
    Standard,
    Reversed,
    Twisted {
        base: Box<IndexingSpec>,
        rho: RhoSpec,
    },
    Inverted {
        base: Box<IndexingSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoSpec {
    Adjoint,
    Trivial,
    /// `table[p][q]` names `ρ_p(q)`.
    Table(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub element: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSpec {
    pub element: String,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub left: KeySpec,
    pub right: KeySpec,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub source: KeySpec,
    pub left: String,
    pub right: String,
    pub value: Vec<TensorTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageSpec {
    pub source: KeySpec,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub name: String,
    pub rho: RhoSpec,
    pub images: Vec<ActionImageSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionImageSpec {
    pub by: String,
    pub source: KeySpec,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingSpec {
    /// Path relative to this file, or `builtin:<name>`.
    pub partner: String,
    pub forms: Vec<FormSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub element: String,
    /// Rows index the graded side, columns the cograded side.
    pub matrix: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SpecFile = serde_json::from_str(text)
            .map_err(|e| anyhow!("line {}, column {}: {e}", e.line(), e.column()))?;
        if spec.format != FORMAT {
            bail!("format: expected {FORMAT:?}, found {:?}", spec.format);
        }
        Ok(spec)
    }
}

// ---------- writing ----------

fn key_spec(g: &Group, k: Key) -> KeySpec {
    (g.name(k.0), k.1)
}

fn terms(g: &Group, x: &GradedElement) -> Vec<Term> {
    x.iter()
        .map(|(k, c)| (g.name(k.0), k.1, c.to_string()))
        .collect()
}

fn tensor_terms(g: &Group, t: &Tensor) -> Vec<TensorTerm> {
    t.iter()
        .map(|((a, b), c)| (key_spec(g, *a), key_spec(g, *b), c.to_string()))
        .collect()
}

pub fn group_spec(g: &Group) -> Result<GroupSpec> {
    let names = g
        .element_names()
        .ok_or_else(|| anyhow!("{} is infinite and cannot be written", g.label()))?;
    let table = g.table().expect("finite group has a table");
    Ok(GroupSpec {
        label: g.label().to_string(),
        elements: names.clone(),
        table: table
            .iter()
            .map(|row| row.iter().map(|&c| names[c].clone()).collect())
            .collect(),
    })
}

pub fn rho_spec(g: &Group, rho: &SelfAction) -> RhoSpec {
    match rho {
        SelfAction::Adjoint => RhoSpec::Adjoint,
        SelfAction::Trivial => RhoSpec::Trivial,
        SelfAction::Table(_) => {
            let elems = g.elements().expect("table actions live on finite groups");
            RhoSpec::Table(
                elems
                    .iter()
                    .map(|&p| elems.iter().map(|&q| g.name(rho.apply(g, p, q))).collect())
                    .collect(),
            )
        }
    }
}

fn indexing_spec(g: &Group, ix: &Indexing) -> IndexingSpec {
    match ix {
        Indexing::Standard => IndexingSpec::Standard,
        Indexing::Reversed => IndexingSpec::Reversed,
        Indexing::Twisted(base, rho) => IndexingSpec::Twisted {
            base: Box::new(indexing_spec(g, base)),
            rho: rho_spec(g, rho),
        },
        Indexing::Inverted(base) => IndexingSpec::Inverted {
            base: Box::new(indexing_spec(g, base)),
        },
    }
}

fn sorted<K: Ord + Copy, V>(m: &HashMap<K, V>) -> Vec<(K, &V)> {
    let mut v: Vec<(K, &V)> = m.iter().map(|(k, v)| (*k, v)).collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

/// Tabulates an action on every group element and basis vector.
pub fn action_spec(g: &Group, keys: &[Key], a: &Action) -> Result<ActionSpec> {
    let elems = g
        .elements()
        .ok_or_else(|| anyhow!("actions over infinite groups cannot be written"))?;
    let mut images = Vec::new();
    for &s in &elems {
        for &k in keys {
            let img = a.apply_basis(s, k);
            if !img.is_zero() {
                images.push(ActionImageSpec {
                    by: g.name(s),
                    source: key_spec(g, k),
                    value: terms(g, &img),
                });
            }
        }
    }
    Ok(ActionSpec {
        name: a.name.clone(),
        rho: rho_spec(g, &a.rho),
        images,
    })
}

pub fn form_specs(forms: &BTreeMap<Elem, Matrix>, g: &Group) -> Vec<FormSpec> {
    forms
        .iter()
        .map(|(&p, m)| FormSpec {
            element: g.name(p),
            matrix: (0..m.rows())
                .map(|i| m.row(i).iter().map(|c| c.to_string()).collect())
                .collect(),
        })
        .collect()
}

/// Lossless rendering of a table; entries are sorted so equal tables give equal text.
pub fn write_table(t: &Tabulated) -> Result<SpecFile> {
    let g = &t.group;
    let keys = t.keys();
    let products = sorted(&t.products)
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((x, y), v)| ProductSpec {
            left: key_spec(g, x),
            right: key_spec(g, y),
            value: terms(g, v),
        })
        .collect();
    let mut delta_blocks = Vec::new();
    for (x, blocks) in sorted(&t.coproduct) {
        for (&(l, r), part) in blocks {
            if !part.is_zero() {
                delta_blocks.push(BlockSpec {
                    source: key_spec(g, x),
                    left: g.name(l),
                    right: g.name(r),
                    value: tensor_terms(g, part),
                });
            }
        }
    }
    let counit = sorted(&t.counit)
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (g.name(k.0), k.1, c.to_string()))
        .collect();
    let images = |m: &HashMap<Key, GradedElement>| -> Vec<ImageSpec> {
        keys.iter()
            .map(|&k| ImageSpec {
                source: key_spec(g, k),
                value: terms(g, &m.get(&k).cloned().unwrap_or_default()),
            })
            .collect()
    };
    Ok(SpecFile {
        format: FORMAT.to_string(),
        name: t.name.clone(),
        group: group_spec(g)?,
        grading: match t.grading {
            Grading::Cograded => GradingSpec::Cograded,
            Grading::GradedHopfSide => GradingSpec::GradedSide,
        },
        indexing: indexing_spec(g, &t.indexing),
        components: t
            .dims
            .iter()
            .map(|(&p, &d)| ComponentSpec {
                element: g.name(p),
                dim: d,
            })
            .collect(),
        units: t
            .units
            .iter()
            .map(|(&p, u)| UnitSpec {
                element: g.name(p),
                value: terms(g, u),
            })
            .collect(),
        products,
        delta_blocks,
        counit,
        antipode: images(&t.antipode),
        star: t.star.as_ref().map(images),
        window: None,
        action: None,
        pairing: None,
    })
}

// ---------- reading ----------

pub fn read_group(s: &GroupSpec) -> Result<Group> {
    let index: HashMap<&str, usize> = s
        .elements
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let table = s
        .table
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .map(|n| {
                    index
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| anyhow!("group.table[{a}]: unknown element {n:?}"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Group::from_table(&s.label, s.elements.clone(), table).context("group")
}

pub fn read_rho(g: &Group, r: &RhoSpec) -> Result<SelfAction> {
    Ok(match r {
        RhoSpec::Adjoint => SelfAction::Adjoint,
        RhoSpec::Trivial => SelfAction::Trivial,
        RhoSpec::Table(rows) => {
            let table = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|n| g.parse(n).map_err(anyhow::Error::from))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SelfAction::from_table(g, table)?
        }
    })
}

fn read_indexing(g: &Group, s: &IndexingSpec) -> Result<Indexing> {
    Ok(match s {
        IndexingSpec::Standard => Indexing::Standard,
        IndexingSpec::Reversed => Indexing::Reversed,
        IndexingSpec::Twisted { base, rho } => {
            Indexing::Twisted(Box::new(read_indexing(g, base)?), read_rho(g, rho)?)
        }
        IndexingSpec::Inverted { base } => Indexing::Inverted(Box::new(read_indexing(g, base)?)),
    })
}

pub fn scalar(s: &str) -> Result<Q> {
    s.parse::<Q>().map_err(|e| anyhow!("{e}"))
}

/// Resolves names against a group and checks indices against component dimensions.
pub struct Reader<'a> {
    pub group: &'a Group,
    pub dims: BTreeMap<Elem, usize>,
}

impl Reader<'_> {
    pub fn element(&self, name: &str) -> Result<Elem> {
        Ok(self.group.parse(name)?)
    }

    pub fn key(&self, (name, i): &KeySpec) -> Result<Key> {
        let p = self.element(name)?;
        let d = self.dims.get(&p).copied().unwrap_or(0);
        if *i >= d {
            bail!("index {i} out of range for component {name} of dimension {d}");
        }
        Ok((p, *i))
    }

    pub fn terms(&self, ts: &[Term]) -> Result<GradedElement> {
        let mut out = GradedElement::new();
        for (name, i, c) in ts {
            out.add_term(self.key(&(name.clone(), *i))?, scalar(c)?);
        }
        Ok(out)
    }

    fn tensor(&self, ts: &[TensorTerm]) -> Result<Tensor> {
        let mut out = Tensor::new();
        for (a, b, c) in ts {
            out.add_term((self.key(a)?, self.key(b)?), scalar(c)?);
        }
        Ok(out)
    }
}

pub fn read_table(s: &SpecFile) -> Result<Tabulated> {
    let g = read_group(&s.group)?;
    let grading = match s.grading {
        GradingSpec::Cograded => Grading::Cograded,
        GradingSpec::GradedSide => Grading::GradedHopfSide,
    };
    let mut t = Tabulated::empty(&s.name, &g, grading);
    t.indexing = read_indexing(&g, &s.indexing).context("indexing")?;
    let mut dims = BTreeMap::new();
    for (n, c) in s.components.iter().enumerate() {
        let p = g
            .parse(&c.element)
            .with_context(|| format!("components[{n}]"))?;
        if dims.insert(p, c.dim).is_some() {
            bail!("components[{n}]: component {} declared twice", c.element);
        }
    }
    dims.retain(|_, d| *d > 0);
    let r = Reader {
        group: &g,
        dims: dims.clone(),
    };
    t.dims = dims;
    for (n, u) in s.units.iter().enumerate() {
        let p = r
            .element(&u.element)
            .with_context(|| format!("units[{n}]"))?;
        t.units
            .insert(p, r.terms(&u.value).with_context(|| format!("units[{n}]"))?);
    }
    for (n, e) in s.products.iter().enumerate() {
        let ctx = || format!("products[{n}]");
        let key = (
            r.key(&e.left).with_context(ctx)?,
            r.key(&e.right).with_context(ctx)?,
        );
        t.products.insert(key, r.terms(&e.value).with_context(ctx)?);
    }
    for k in t.keys() {
        t.coproduct.insert(k, BTreeMap::new());
    }
    for (n, b) in s.delta_blocks.iter().enumerate() {
        let ctx = || format!("delta_blocks[{n}]");
        let x = r.key(&b.source).with_context(ctx)?;
        let legs = (
            r.element(&b.left).with_context(ctx)?,
            r.element(&b.right).with_context(ctx)?,
        );
        let part = r.tensor(&b.value).with_context(ctx)?;
        if part.keys().any(|(a, c)| (a.0, c.0) != legs) {
            bail!(
                "delta_blocks[{n}]: a term lies outside the block ({}, {})",
                b.left,
                b.right
            );
        }
        t.coproduct.entry(x).or_default().insert(legs, part);
    }
    for (n, (name, i, c)) in s.counit.iter().enumerate() {
        let ctx = || format!("counit[{n}]");
        let k = r.key(&(name.clone(), *i)).with_context(ctx)?;
        t.counit.insert(k, scalar(c).with_context(ctx)?);
    }
    for (n, e) in s.antipode.iter().enumerate() {
        let ctx = || format!("antipode[{n}]");
        t.antipode.insert(
            r.key(&e.source).with_context(ctx)?,
            r.terms(&e.value).with_context(ctx)?,
        );
    }
    if let Some(star) = &s.star {
        let mut m = HashMap::new();
        for (n, e) in star.iter().enumerate() {
            let ctx = || format!("star[{n}]");
            m.insert(
                r.key(&e.source).with_context(ctx)?,
                r.terms(&e.value).with_context(ctx)?,
            );
        }
        t.star = Some(m);
    }
    t.invert_antipode().context("antipode")?;
    Ok(t)
}

pub fn read_action(g: &Group, dims: &BTreeMap<Elem, usize>, s: &ActionSpec) -> Result<Action> {
    let r = Reader {
        group: g,
        dims: dims.clone(),
    };
    let rho = read_rho(g, &s.rho).context("action.rho")?;
    let mut images = HashMap::new();
    for (n, e) in s.images.iter().enumerate() {
        let ctx = || format!("action.images[{n}]");
        let by = r.element(&e.by).with_context(ctx)?;
        images.insert(
            (by, r.key(&e.source).with_context(ctx)?),
            r.terms(&e.value).with_context(ctx)?,
        );
    }
    Ok(Action::from_table(&s.name, rho, images))
}

pub fn read_forms(g: &Group, forms: &[FormSpec]) -> Result<BTreeMap<Elem, Matrix>> {
    let mut out = BTreeMap::new();
    for (n, f) in forms.iter().enumerate() {
        let ctx = || format!("pairing.forms[{n}]");
        let p = g.parse(&f.element).with_context(ctx)?;
        let rows = f
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| scalar(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .with_context(ctx)?;
        let m = if rows.is_empty() {
            Matrix::zeros(0, 0)
        } else {
            Matrix::from_rows(rows)
                .map_err(|e| anyhow!("{e}"))
                .with_context(ctx)?
        };
        out.insert(p, m);
    }
    Ok(out)
}

pub fn read_window(g: &Group, names: &[String]) -> Result<Window> {
    let elems = names
        .iter()
        .map(|n| g.parse(n).map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ok(Window::new(g, elems)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mha_core::hopf::{make_group_algebra, make_kg};

    #[test]
    fn tables_round_trip_through_text() {
        let g = Group::symmetric3();
        for h in [make_kg(&g), make_group_algebra(&g)] {
            let t = Tabulated::materialize(h.as_ref()).unwrap();
            let spec = write_table(&t).unwrap();
            let text = spec.to_json();
            let back = read_table(&SpecFile::from_json(&text).unwrap()).unwrap();
            assert_eq!(write_table(&back).unwrap().to_json(), text);
        }
    }

    #[test]
    fn unknown_elements_are_reported_with_their_section() {
        let g = Group::cyclic(2);
        let t = Tabulated::materialize(make_kg(&g).as_ref()).unwrap();
        let mut spec = write_table(&t).unwrap();
        spec.products[0].left.0 = "7".into();
        let err = read_table(&spec).unwrap_err();
        assert!(format!("{err:#}").contains("products[0]"), "{err:#}");
    }

    #[test]
    fn malformed_json_reports_its_position() {
        let err = SpecFile::from_json("{\n  \"format\": 3\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        let g = Group::cyclic(2);
        let t = Tabulated::materialize(make_kg(&g).as_ref()).unwrap();
        let mut spec = write_table(&t).unwrap();
        spec.antipode[0].value[0].1 = 4;
        assert!(format!("{:#}", read_table(&spec).unwrap_err()).contains("antipode[0]"));
    }
}
