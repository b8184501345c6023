//! JSON group files.
//!
//! ```json
//! {"format_version": 1, "kind": "class2", "p": 3, "dimV": 2, "dimW": 1,
//!  "tensor": [[1]], "provenance": {"builder": "ito", "params": {"p": "3", "r": "1"}}}
//! ```
//!
//! `kind` is `class2` (tensor rows in pair order `(0,1), (0,2), ...`),
//! `class3` or `pc` (commutator table rows in order `(1,0), (2,0), (2,1), ...`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::census::{self, FiberCensus};
use crate::class2::{build_ito, build_theorem1, BiMapGroup};
use crate::class3::{build_free_class3, Class3Group};
use crate::error::{Error, Result};
use crate::pcgroup::PcGroup;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub enum Group {
    Class2(BiMapGroup),
    Class3(Class3Group),
    Pc(PcGroup),
}

impl Group {
    pub fn p(&self) -> u32 {
        match self {
            Group::Class2(g) => g.p(),
            Group::Class3(g) => g.p(),
            Group::Pc(g) => g.p(),
        }
    }

    pub fn order_exp(&self) -> usize {
        match self {
            Group::Class2(g) => g.order_exp(),
            Group::Class3(g) => g.pc().order_exp(),
            Group::Pc(g) => g.order_exp(),
        }
    }

    /// The coset-level census appropriate to the kind.
    pub fn census(&self) -> Result<FiberCensus> {
        match self {
            Group::Class2(g) => census::census_class2(g),
            Group::Class3(g) => census::census_class3(g),
            Group::Pc(g) => census::census_pc(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub builder: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Body {
    Class2 {
        p: u32,
        #[serde(rename = "dimV")]
        dim_v: usize,
        #[serde(rename = "dimW")]
        dim_w: usize,
        tensor: Vec<Vec<u32>>,
    },
    Class3 {
        p: u32,
        ngens: usize,
        weights: Vec<u8>,
        comm_table: Vec<Vec<u32>>,
    },
    Pc {
        p: u32,
        ngens: usize,
        weights: Vec<u8>,
        comm_table: Vec<Vec<u32>>,
    },
}

#[derive(Serialize, Deserialize)]
struct Document {
    format_version: u32,
    #[serde(flatten)]
    body: Body,
    provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub group: Group,
    pub provenance: Provenance,
}

fn schema(e: impl std::fmt::Display) -> Error {
    Error::Schema(e.to_string())
}

impl GroupFile {
    pub fn new(group: Group, builder: &str, params: &[(&str, String)]) -> Self {
        let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        GroupFile { group, provenance: Provenance { builder: builder.into(), params } }
    }

    pub fn ito(p: u32, r: usize) -> Result<Self> {
        Ok(Self::new(Group::Class2(build_ito(p, r)?), "ito", &[("p", p.to_string()), ("r", r.to_string())]))
    }

    pub fn theorem1(p: u32, n: usize) -> Result<Self> {
        Ok(Self::new(Group::Class2(build_theorem1(p, n)?), "theorem1", &[("p", p.to_string()), ("n", n.to_string())]))
    }

    pub fn class3(p: u32) -> Result<Self> {
        Ok(Self::new(Group::Class3(build_free_class3(p)?), "class3", &[("p", p.to_string())]))
    }

    /// `builder(k=v,...)`, parameters in key order.
    pub fn group_id(&self) -> String {
        let params: Vec<String> = self.provenance.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.provenance.builder, params.join(","))
    }

    pub fn to_json(&self) -> Result<String> {
        let body = match &self.group {
            Group::Class2(g) => Body::Class2 {
                p: g.p(),
                dim_v: g.dim_v(),
                dim_w: g.dim_w(),
                tensor: g.tensor().into_iter().map(|v| v.into_inner()).collect(),
            },
            Group::Class3(g) => pc_body(g.pc(), true),
            Group::Pc(g) => pc_body(g, false),
        };
        let doc = Document { format_version: FORMAT_VERSION, body, provenance: self.provenance.clone() };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(schema)?;
        let obj = value.as_object().ok_or_else(|| schema("group file must be a JSON object"))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| schema("missing string field `kind`"))?;
        let expected: &[&str] = match kind {
            "class2" => &["format_version", "kind", "p", "dimV", "dimW", "tensor", "provenance"],
            "class3" | "pc" => &["format_version", "kind", "p", "ngens", "weights", "comm_table", "provenance"],
            other => return Err(schema(format!("unknown kind `{other}`"))),
        };
        let have: BTreeSet<&str> = obj.keys().map(String::as_str).collect();
        let want: BTreeSet<&str> = expected.iter().copied().collect();
        if let Some(extra) = have.difference(&want).next() {
            return Err(schema(format!("unexpected field `{extra}`")));
        }
        if let Some(missing) = want.difference(&have).next() {
            return Err(schema(format!("missing field `{missing}`")));
        }
        let doc: Document = serde_json::from_value(value).map_err(schema)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(schema(format!("unsupported format_version {}", doc.format_version)));
        }
        let group = match doc.body {
            Body::Class2 { p, dim_v, dim_w, tensor } => {
                Group::Class2(BiMapGroup::new(p, dim_v, dim_w, tensor.into_iter().map(Into::into).collect()).map_err(schema)?)
            }
            Body::Class3 { p, ngens, weights, comm_table } => {
                let pc = pc_from_parts(p, ngens, weights, comm_table)?;
                Group::Class3(Class3Group::from_pc(pc).map_err(schema)?)
            }
            Body::Pc { p, ngens, weights, comm_table } => {
                let pc = pc_from_parts(p, ngens, weights, comm_table)?;
                if !pc.consistency_check() {
                    return Err(schema("pc presentation is inconsistent"));
                }
                Group::Pc(pc)
            }
        };
        Ok(GroupFile { group, provenance: doc.provenance })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

fn pc_body(g: &PcGroup, class3: bool) -> Body {
    let (p, ngens, weights) = (g.p(), g.ngens(), g.weights().to_vec());
    let comm_table = g.comm_table().iter().map(|v| v.to_vec()).collect();
    if class3 {
        Body::Class3 { p, ngens, weights, comm_table }
    } else {
        Body::Pc { p, ngens, weights, comm_table }
    }
}

fn pc_from_parts(p: u32, ngens: usize, weights: Vec<u8>, comm_table: Vec<Vec<u32>>) -> Result<PcGroup> {
    if weights.len() != ngens {
        return Err(schema(format!("ngens = {ngens} but {} weights given", weights.len())));
    }
    PcGroup::new(p, weights, comm_table).map_err(schema)
}
