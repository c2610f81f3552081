//! The poset file format and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::{LazyPoset, Prefix};
use crate::error::{Error, Result};
use crate::poset::{intersect, make_poset, FinPoset};

/// `{"n": 3, "le": [[0, 1], [0, 2]], "realizer"?: …, "meta"?: …}`.
///
/// `le` lists strict relations; the loader closes them transitively.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub n: usize,
    pub le: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizer: Option<RealizerAnnotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, Value>>,
}

/// Two linear orders, each listed from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizerAnnotation {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_right: Option<String>,
}

impl PosetFile {
    pub fn from_poset(p: &FinPoset) -> Self {
        PosetFile {
            n: p.n(),
            le: p.pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            realizer: None,
            meta: None,
        }
    }

    /// A prefix of a construction, with its realizer restricted to the
    /// prefix and the construction's parameters and certificate as metadata.
    pub fn from_prefix(p: &LazyPoset, prefix: &Prefix) -> Result<Self> {
        let fin = prefix.poset()?;
        let mut file = Self::from_poset(&fin);
        let mut meta = BTreeMap::new();
        meta.insert("construction".to_string(), Value::from(p.name()));
        meta.insert("prefix".to_string(), Value::from(prefix.len()));
        let params: serde_json::Map<String, Value> = p
            .params()
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        meta.insert("params".to_string(), Value::Object(params));
        if let Some(c) = p.certificate() {
            meta.insert("certificate".to_string(), serde_json::to_value(c)?);
        }
        if let (Some(r), Some(lr), Some(rr)) =
            (p.realizer(), &prefix.left_ranks, &prefix.right_ranks)
        {
            file.realizer = Some(RealizerAnnotation {
                left: Prefix::linear_order(lr),
                right: Prefix::linear_order(rr),
                type_left: Some(r.type_left.to_string()),
                type_right: Some(r.type_right.to_string()),
            });
        }
        let labels: Vec<Value> = (0..prefix.len())
            .map(|i| Value::from(prefix.label(i)))
            .collect();
        meta.insert("labels".to_string(), Value::Array(labels));
        file.meta = Some(meta);
        Ok(file)
    }

    /// Validates the relation and, when present, checks that the realizer
    /// consists of two permutations whose intersection is the poset.
    pub fn to_poset(&self) -> Result<FinPoset> {
        let pairs: Vec<(usize, usize)> = self.le.iter().map(|&[i, j]| (i, j)).collect();
        let p = make_poset(self.n, &pairs)?;
        if let Some(r) = &self.realizer {
            let mut sides = Vec::new();
            for (name, order) in [("left", &r.left), ("right", &r.right)] {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != (0..self.n).collect::<Vec<_>>() {
                    return Err(Error::Format(format!(
                        "realizer {name} is not a permutation of 0..{}",
                        self.n
                    )));
                }
                sides.push(FinPoset::from_linear_order(order));
            }
            if intersect(&sides[0], &sides[1])? != p {
                return Err(Error::Format(
                    "realizer orders do not intersect to the poset".into(),
                ));
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json() + "\n")?)
    }

    pub fn labels(&self) -> Option<Vec<String>> {
        let labels = self.meta.as_ref()?.get("labels")?.as_array()?;
        labels
            .iter()
            .map(|v| v.as_str().map(str::to_string))
            .collect()
    }
}

pub fn load_poset(path: impl AsRef<Path>) -> Result<FinPoset> {
    PosetFile::load(path)?.to_poset()
}

/// The Hasse diagram in DOT, edges pointing upwards.
pub fn to_dot(p: &FinPoset, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for v in 0..p.n() {
        match labels.and_then(|l| l.get(v)) {
            Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for (i, j) in p.hasse() {
        writeln!(out, "  {i} -> {j};").unwrap();
    }
    out.push_str("}\n");
    out
}
