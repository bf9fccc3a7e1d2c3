//! JSON formats for posets, functors, grids, tame functors, datasets and
//! pipeline runs, plus DOT export.
//!
//! Rationals are written as strings (`"-1/2"`, `"0.25"`); integers are also
//! accepted on input. Maps between dictionaries keyed by element ids are
//! written with sorted keys so output is reproducible.

use crate::error::{Error, Result};
use crate::homalg::{KoszulComplex, VectFunctor};
use crate::linalg::{FpMatrix, PrimeField};
use crate::pipeline::{MetricDataset, PipelineConfig, PipelineOutput, SubsetFunctor};
use crate::poset::{CoverPolicy, Poset};
use crate::realisation::{format_rational, parse_rational, Grid, GridSpec, Q};
use crate::transfer::tame::TameFunctor;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

/// A rational given as a string or an integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn value(&self) -> Result<Q> {
        match self {
            RationalJson::Int(n) => Ok(Q::from_integer(*n)),
            RationalJson::Text(s) => parse_rational(s),
        }
    }
}

impl From<Q> for RationalJson {
    fn from(q: Q) -> Self {
        RationalJson::Text(format_rational(q))
    }
}

fn rationals(values: &[RationalJson]) -> Result<Vec<Q>> {
    values.iter().map(RationalJson::value).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    /// Pairs `[x, y]` with `y` covering `x`.
    pub covers: Vec<(String, String)>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            elements: p.names().to_vec(),
            covers: p.covers().iter().map(|&(x, y)| (p.name(x).to_string(), p.name(y).to_string())).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::new(&self.elements, &self.covers, CoverPolicy::Reject)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub poset: PosetJson,
    pub p: u32,
    /// Missing elements have dimension 0.
    pub dims: BTreeMap<String, usize>,
    /// Keys `"x->y"` for covers; missing covers carry zero maps. Rows of the
    /// matrix act on column vectors.
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn split_arrow(key: &str) -> Result<(&str, &str)> {
    key.split_once("->")
        .map(|(x, y)| (x.trim(), y.trim()))
        .ok_or_else(|| Error::Parse(format!("map key `{key}` is not of the form `x->y`")))
}

fn dims_by_name(poset: &Poset, dims: &BTreeMap<String, usize>) -> Result<Vec<usize>> {
    let mut out = vec![0; poset.len()];
    for (x, &d) in dims {
        out[poset.index_of(x)?] = d;
    }
    Ok(out)
}

/// A functor on `poset` from dims and matrices keyed by element ids.
pub fn functor_on(
    poset: Arc<Poset>,
    p: u32,
    dims: &BTreeMap<String, usize>,
    maps: &BTreeMap<String, Vec<Vec<i64>>>,
) -> Result<VectFunctor> {
    let field = PrimeField::new(p)?;
    let dims = dims_by_name(&poset, dims)?;
    let mut cover_maps = HashMap::new();
    for (key, rows) in maps {
        let (x, y) = split_arrow(key)?;
        let (x, y) = (poset.index_of(x)?, poset.index_of(y)?);
        let m = FpMatrix::from_rows(field, dims[x], rows)
            .map_err(|_| Error::ShapeMismatch(poset.name(x).into(), poset.name(y).into()))?;
        cover_maps.insert((x, y), m);
    }
    let f = VectFunctor::new(poset, field, dims, cover_maps)?;
    f.validate()?;
    Ok(f)
}

fn maps_json(f: &VectFunctor) -> BTreeMap<String, Vec<Vec<i64>>> {
    let p = f.poset();
    p.covers()
        .iter()
        .map(|&(x, y)| {
            let rows = f.cover_map(x, y).to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect());
            (format!("{}->{}", p.name(x), p.name(y)), rows.collect())
        })
        .collect()
}

fn dims_json(f: &VectFunctor) -> BTreeMap<String, usize> {
    f.poset().elements().map(|x| (f.poset().name(x).to_string(), f.dim(x))).collect()
}

impl FunctorJson {
    pub fn from_functor(f: &VectFunctor) -> Self {
        FunctorJson {
            poset: PosetJson::from_poset(f.poset()),
            p: f.field().p(),
            dims: dims_json(f),
            maps: maps_json(f),
        }
    }

    pub fn to_functor(&self) -> Result<VectFunctor> {
        functor_on(Arc::new(self.poset.to_poset()?), self.p, &self.dims, &self.maps)
    }
}

/// Which elements grid points may sit over: all of them, a listed set `D`,
/// or the down-set of one element `d`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GridDomainJson {
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(rename = "V", default)]
    pub values: Vec<RationalJson>,
}

impl GridDomainJson {
    pub fn to_spec(&self, base: Arc<Poset>) -> Result<GridSpec> {
        let v = rationals(&self.values)?;
        match (&self.domain, &self.d) {
            (Some(_), Some(_)) => Err(Error::PreconditionFailed("give either `D` or `d`, not both".into())),
            (Some(ids), None) => {
                let d = ids.iter().map(|x| base.index_of(x)).collect::<Result<Vec<_>>>()?;
                GridSpec::new(base, d, v)
            }
            (None, Some(top)) => {
                let top = base.index_of(top)?;
                GridSpec::principal(base, top, v)
            }
            (None, None) => GridSpec::full(base, v),
        }
    }

    pub fn from_spec(spec: &GridSpec) -> Self {
        let b = &spec.base;
        let (domain, d) = match spec.principal_top() {
            Some(top) => (None, Some(b.name(top).to_string())),
            None => (Some(spec.d.iter().map(|&x| b.name(x).to_string()).collect()), None),
        };
        GridDomainJson { domain, d, values: spec.v.iter().map(|&q| q.into()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpecJson {
    pub base_poset: PosetJson,
    #[serde(flatten)]
    pub domain: GridDomainJson,
}

impl GridSpecJson {
    pub fn to_spec(&self) -> Result<GridSpec> {
        self.domain.to_spec(Arc::new(self.base_poset.to_poset()?))
    }

    pub fn from_spec(spec: &GridSpec) -> Self {
        GridSpecJson { base_poset: PosetJson::from_poset(&spec.base), domain: GridDomainJson::from_spec(spec) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPointJson {
    pub id: String,
    pub base: String,
    pub coords: BTreeMap<String, String>,
}

/// A built grid: its spec, its points and its covers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridJson {
    pub spec: GridSpecJson,
    pub points: Vec<GridPointJson>,
    pub covers: Vec<(String, String)>,
}

impl GridJson {
    pub fn from_grid(g: &Grid) -> Self {
        let b = g.base();
        let points = g
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| GridPointJson {
                id: g.poset.name(i).to_string(),
                base: b.name(p.base).to_string(),
                coords: p.coords.iter().map(|(&x, &v)| (b.name(x).to_string(), format_rational(v))).collect(),
            })
            .collect();
        GridJson { spec: GridSpecJson::from_spec(&g.spec), points, covers: PosetJson::from_poset(&g.poset).covers }
    }
}

/// A tame functor: a grid spec and a functor on the grid keyed by point ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TameJson {
    pub grid: GridSpecJson,
    pub p: u32,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

impl TameJson {
    pub fn to_tame(&self) -> Result<TameFunctor> {
        let grid = Grid::build(self.grid.to_spec()?)?;
        let values = functor_on(grid.poset.clone(), self.p, &self.dims, &self.maps)?;
        TameFunctor::new(grid, values)
    }

    pub fn from_tame(t: &TameFunctor) -> Self {
        TameJson {
            grid: GridSpecJson::from_spec(&t.grid.spec),
            p: t.values.field().p(),
            dims: dims_json(&t.values),
            maps: maps_json(&t.values),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetJson {
    pub points: Vec<String>,
    pub dist: Vec<Vec<RationalJson>>,
    pub m: RationalJson,
}

impl DatasetJson {
    pub fn to_dataset(&self) -> Result<MetricDataset> {
        let dist = self.dist.iter().map(|r| rationals(r)).collect::<Result<Vec<_>>>()?;
        MetricDataset::new(self.points.clone(), dist, self.m.value()?)
    }

    pub fn from_dataset(d: &MetricDataset) -> Self {
        DatasetJson {
            points: d.points.clone(),
            dist: d.dist.iter().map(|r| r.iter().map(|&q| q.into()).collect()).collect(),
            m: d.m.into(),
        }
    }
}

pub type SubsetsJson = BTreeMap<String, Vec<String>>;

pub fn subsets_json(s: &SubsetFunctor, data: &MetricDataset) -> SubsetsJson {
    s.poset.elements().map(|x| (s.poset.name(x).to_string(), s.names(data, x))).collect()
}

/// Non-zero entries of a Betti diagram by element id.
pub fn betti_json(p: &Poset, betti: &[usize]) -> BTreeMap<String, usize> {
    p.elements().filter(|&x| betti[x] > 0).map(|x| (p.name(x).to_string(), betti[x])).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KoszulJson {
    pub element: String,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    pub differentials: Vec<Vec<Vec<u32>>>,
}

impl KoszulJson {
    pub fn from_complex(p: &Poset, k: &KoszulComplex) -> Self {
        KoszulJson {
            element: p.name(k.element).to_string(),
            dims: k.dims.clone(),
            homology: k.homology_dims(),
            differentials: k.differentials.iter().map(FpMatrix::to_rows).collect(),
        }
    }
}

/// A value given inline or as a path to a JSON file, relative to the file
/// that refers to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

impl<T: DeserializeOwned + Clone> Source<T> {
    pub fn load(&self, dir: &Path) -> Result<T> {
        match self {
            Source::Inline(t) => Ok(t.clone()),
            Source::Path(p) => read_json(&dir.join(p)),
        }
    }
}

fn default_prime() -> u32 {
    2
}

fn default_max_degree() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfigJson {
    pub dataset: Source<DatasetJson>,
    pub poset: Source<PosetJson>,
    #[serde(rename = "U")]
    pub subsets: Source<SubsetsJson>,
    pub grid: GridDomainJson,
    pub epsilon: RationalJson,
    #[serde(default = "default_prime")]
    pub p: u32,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
}

impl PipelineConfigJson {
    /// Resolves file references relative to `dir`.
    pub fn to_config(&self, dir: &Path) -> Result<PipelineConfig> {
        let data = self.dataset.load(dir)?.to_dataset()?;
        let poset = Arc::new(self.poset.load(dir)?.to_poset()?);
        let named: HashMap<String, Vec<String>> = self.subsets.load(dir)?.into_iter().collect();
        let subsets = SubsetFunctor::from_names(poset.clone(), &data, &named)?;
        Ok(PipelineConfig {
            grid: self.grid.to_spec(poset)?,
            data,
            subsets,
            epsilon: self.epsilon.value()?,
            field: PrimeField::new(self.p)?,
            max_degree: self.max_degree,
        })
    }
}

pub fn load_pipeline_config(path: &Path) -> Result<PipelineConfig> {
    let json: PipelineConfigJson = read_json(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    json.to_config(&dir)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutputJson {
    pub grid: GridJson,
    pub extended_subsets: SubsetsJson,
    pub functor: FunctorJson,
    /// One diagram per degree, starting at 0.
    pub betti: Vec<BTreeMap<String, usize>>,
}

impl PipelineOutputJson {
    pub fn new(config: &PipelineConfig, out: &PipelineOutput) -> Self {
        PipelineOutputJson {
            grid: GridJson::from_grid(&out.grid),
            extended_subsets: subsets_json(&out.extended, &config.data),
            functor: FunctorJson::from_functor(&out.functor),
            betti: out.betti.iter().map(|b| betti_json(&out.grid.poset, b)).collect(),
        }
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot(p: &Poset, node: impl Fn(usize) -> String, edge: impl Fn(usize, usize) -> Option<String>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for x in p.elements() {
        writeln!(out, "  {} [label={}];", dot_quote(p.name(x)), dot_quote(&node(x))).unwrap();
    }
    for (x, y) in p.covers() {
        let label = edge(x, y).map(|l| format!(" [label={}]", dot_quote(&l))).unwrap_or_default();
        writeln!(out, "  {} -> {}{label};", dot_quote(p.name(x)), dot_quote(p.name(y))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// The Hasse diagram in DOT, smaller elements at the bottom.
pub fn to_dot(p: &Poset) -> String {
    dot(p, |x| p.name(x).to_string(), |_, _| None)
}

/// DOT for a functor: nodes show dimensions, edges the rank of each cover map.
pub fn functor_to_dot(f: &VectFunctor) -> String {
    let p = f.poset();
    dot(p, |x| format!("{}\ndim {}", p.name(x), f.dim(x)), |x, y| Some(format!("rank {}", f.cover_map(x, y).rank())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain_product;

    #[test]
    fn functors_round_trip() {
        let text = r#"{
            "poset": {"elements": ["0", "1", "2"], "covers": [["0", "1"], ["1", "2"]]},
            "p": 5,
            "dims": {"0": 1, "1": 2, "2": 1},
            "maps": {"0->1": [[1], [3]], "1->2": [[2, 1]]}
        }"#;
        let j: FunctorJson = serde_json::from_str(text).unwrap();
        let f = j.to_functor().unwrap();
        assert_eq!(f.map(0, 2).to_rows(), vec![vec![0]]);
        let back = FunctorJson::from_functor(&f);
        assert_eq!(back.to_functor().unwrap().dims(), f.dims());
        assert_eq!(back.maps["1->2"], vec![vec![2, 1]]);
    }

    #[test]
    fn bad_functors_are_rejected() {
        let text = r#"{
            "poset": {"elements": ["a", "b", "c", "d"], "covers": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]]},
            "p": 2,
            "dims": {"a": 1, "b": 1, "c": 1, "d": 1},
            "maps": {"a->b": [[1]], "a->c": [[1]], "b->d": [[1]]}
        }"#;
        let j: FunctorJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.to_functor(), Err(Error::NotFunctorial(..))));
        let shape = r#"{"poset": {"elements": ["a", "b"], "covers": [["a", "b"]]},
            "p": 2, "dims": {"a": 1, "b": 1}, "maps": {"a->b": [[1, 0]]}}"#;
        let j: FunctorJson = serde_json::from_str(shape).unwrap();
        assert!(matches!(j.to_functor(), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn grid_specs_accept_each_domain_form() {
        let base = PosetJson::from_poset(&chain_product(2, 2));
        let make = |extra: &str| {
            let text =
                format!(r#"{{"base_poset": {}, {extra} "V": ["-1/2", 0]}}"#, serde_json::to_string(&base).unwrap());
            serde_json::from_str::<GridSpecJson>(&text).unwrap().to_spec()
        };
        assert!(make("").is_err(), "0 is not an allowed value");
        let text = format!(r#"{{"base_poset": {}, "d": "1,1", "V": ["-0.5"]}}"#, serde_json::to_string(&base).unwrap());
        let spec = serde_json::from_str::<GridSpecJson>(&text).unwrap().to_spec().unwrap();
        assert_eq!(spec.d.len(), 4);
        assert_eq!(spec.v, vec![Q::new(-1, 2)]);
        let again = GridSpecJson::from_spec(&spec).to_spec().unwrap();
        assert_eq!(again.d, spec.d);
    }

    #[test]
    fn dot_lists_every_cover() {
        let p = chain_product(1, 2);
        let dot = to_dot(&p);
        assert_eq!(dot.matches(" -> ").count(), p.covers().len());
        assert!(dot.starts_with("digraph"));
    }
}
