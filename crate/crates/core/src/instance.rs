//! The JSON instance document: carrier size, grid denominator, and optional
//! topology, fuzzy sets, maps, designated compact family, and gallery
//! parameters. Rationals travel as exact `"p/q"` strings or as integers
//! scaled by `1/q`; no floats are accepted. Validation reports positioned
//! issues rather than stopping at the first.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value as Json};

use crate::error::{Error, ParseIssue, Result};
use crate::fuzzy::SupClosedSubgrid;
use crate::fuzzy_set::FuzzySet;
use crate::gallery::IntervalFamily;
use crate::subset::{check_ground_size, Subset};
use crate::topology::{generate_topology, GroundMap, Topology};
use crate::value::Value;

/// A parsed and validated instance document.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceDocument {
    pub ground_size: usize,
    pub denominator: u32,
    pub topology: Option<Topology>,
    pub fuzzy_sets: Vec<FuzzySet>,
    pub maps: BTreeMap<String, GroundMap>,
    pub oracle: Option<BTreeSet<Subset>>,
    pub subset: Option<Subset>,
    pub intervals: Option<IntervalFamily>,
    pub levels: Option<SupClosedSubgrid>,
    pub epsilon: Option<Value>,
}

const KNOWN_FIELDS: &[&str] = &[
    "ground_size",
    "denominator",
    "topology",
    "subbase",
    "fuzzy_sets",
    "maps",
    "oracle",
    "subset",
    "intervals",
    "levels",
    "epsilon",
];

struct Validator {
    issues: Vec<ParseIssue>,
}

impl Validator {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(ParseIssue {
            path: path.into(),
            message: message.into(),
        });
    }

    fn value(&mut self, raw: &Json, q: u32, path: &str) -> Option<Value> {
        match raw {
            Json::Number(n) => match n.as_u64() {
                Some(j) if j <= u64::from(q) => Some(Value::grid(j as u32, q)),
                _ => {
                    self.push(path, format!("integer values are scaled by 1/{q} and must lie in 0..={q}"));
                    None
                }
            },
            Json::String(s) => match s.parse::<Value>() {
                Ok(v) => Some(v),
                Err(e) => {
                    self.push(path, e.to_string());
                    None
                }
            },
            _ => {
                self.push(path, "expected a \"p/q\" string or a grid integer");
                None
            }
        }
    }

    fn point(&mut self, raw: &Json, n: usize, path: &str) -> Option<usize> {
        match raw.as_u64() {
            Some(i) if (i as usize) < n => Some(i as usize),
            _ => {
                self.push(path, format!("expected a point index below {n}"));
                None
            }
        }
    }

    fn subset(&mut self, raw: &Json, n: usize, path: &str) -> Option<Subset> {
        let items = match raw.as_array() {
            Some(items) => items,
            None => {
                self.push(path, "expected an array of point indices");
                return None;
            }
        };
        let mut s = Subset::EMPTY;
        let mut ok = true;
        for (i, item) in items.iter().enumerate() {
            match self.point(item, n, &format!("{path}[{i}]")) {
                Some(p) => s = s.with(p),
                None => ok = false,
            }
        }
        ok.then_some(s)
    }

    fn fuzzy_set(&mut self, raw: &Json, n: usize, q: u32, path: &str) -> Option<FuzzySet> {
        let items = match raw.as_array() {
            Some(items) => items,
            None => {
                self.push(path, "expected an array of membership values");
                return None;
            }
        };
        if items.len() != n {
            self.push(path, format!("expected {n} values, got {}", items.len()));
            return None;
        }
        let mut values = Vec::with_capacity(n);
        for (i, item) in items.iter().enumerate() {
            values.push(self.value(item, q, &format!("{path}[{i}]"))?);
        }
        Some(FuzzySet::new(values))
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let root: Json = serde_json::from_str(text).map_err(|e| {
            Error::Instance(vec![ParseIssue {
                path: "$".into(),
                message: format!("malformed JSON: {e}"),
            }])
        })?;
        let obj = match root.as_object() {
            Some(obj) => obj,
            None => {
                return Err(Error::Instance(vec![ParseIssue {
                    path: "$".into(),
                    message: "expected a JSON object".into(),
                }]))
            }
        };
        let mut v = Validator { issues: Vec::new() };

        for key in obj.keys() {
            if !KNOWN_FIELDS.contains(&key.as_str()) {
                v.push(key.clone(), "unknown field");
            }
        }

        let ground_size = match obj.get("ground_size").and_then(Json::as_u64) {
            Some(n) => {
                if let Err(e) = check_ground_size(n as usize) {
                    v.push("ground_size", e.to_string());
                    None
                } else {
                    Some(n as usize)
                }
            }
            None => {
                v.push("ground_size", "required integer field");
                None
            }
        };
        let denominator = match obj.get("denominator").and_then(Json::as_u64) {
            Some(q) if (1..=64).contains(&q) => Some(q as u32),
            _ => {
                v.push("denominator", "required integer field in 1..=64");
                None
            }
        };
        let (n, q) = match (ground_size, denominator) {
            (Some(n), Some(q)) => (n, q),
            _ => return Err(Error::Instance(v.issues)),
        };

        let subbase_flag = match obj.get("subbase") {
            None => false,
            Some(Json::Bool(b)) => *b,
            Some(_) => {
                v.push("subbase", "expected a boolean");
                false
            }
        };

        let topology = obj.get("topology").and_then(|raw| {
            let items = match raw.as_array() {
                Some(items) => items,
                None => {
                    v.push("topology", "expected an array of subsets");
                    return None;
                }
            };
            let mut sets = Vec::new();
            for (i, item) in items.iter().enumerate() {
                sets.push(v.subset(item, n, &format!("topology[{i}]"))?);
            }
            if subbase_flag {
                Some(generate_topology(&sets, n))
            } else {
                match Topology::new(n, sets.into_iter().collect()) {
                    Ok(t) => Some(t),
                    Err(e) => {
                        v.push(
                            "topology",
                            format!("{e}; pass \"subbase\": true to request closure"),
                        );
                        None
                    }
                }
            }
        });

        let mut fuzzy_sets = Vec::new();
        if let Some(raw) = obj.get("fuzzy_sets") {
            match raw.as_array() {
                Some(rows) => {
                    for (i, row) in rows.iter().enumerate() {
                        if let Some(f) = v.fuzzy_set(row, n, q, &format!("fuzzy_sets[{i}]")) {
                            fuzzy_sets.push(f);
                        }
                    }
                }
                None => v.push("fuzzy_sets", "expected an array of value rows"),
            }
        }

        let mut maps = BTreeMap::new();
        if let Some(raw) = obj.get("maps") {
            match raw.as_object() {
                Some(entries) => {
                    for (name, entry) in entries {
                        let path = format!("maps.{name}");
                        let target = entry.get("target_size").and_then(Json::as_u64);
                        let image = entry.get("image").and_then(Json::as_array);
                        match (target, image) {
                            (Some(target), Some(image_raw)) => {
                                let mut image = Vec::with_capacity(image_raw.len());
                                let mut ok = true;
                                for (i, item) in image_raw.iter().enumerate() {
                                    match v.point(
                                        item,
                                        target as usize,
                                        &format!("{path}.image[{i}]"),
                                    ) {
                                        Some(p) => image.push(p),
                                        None => ok = false,
                                    }
                                }
                                if ok {
                                    if image.len() != n {
                                        v.push(
                                            path.clone(),
                                            format!("image must list all {n} source points"),
                                        );
                                    } else {
                                        match GroundMap::new(target as usize, image) {
                                            Ok(h) => {
                                                maps.insert(name.clone(), h);
                                            }
                                            Err(e) => v.push(path.clone(), e.to_string()),
                                        }
                                    }
                                }
                            }
                            _ => v.push(path, "expected {\"target_size\": m, \"image\": [...]}"),
                        }
                    }
                }
                None => v.push("maps", "expected an object of named maps"),
            }
        }

        let oracle = obj.get("oracle").and_then(|raw| {
            let items = raw.as_array().or_else(|| {
                v.push("oracle", "expected an array of subsets");
                None
            })?;
            let mut family = BTreeSet::new();
            for (i, item) in items.iter().enumerate() {
                family.insert(v.subset(item, n, &format!("oracle[{i}]"))?);
            }
            Some(family)
        });

        let subset = obj
            .get("subset")
            .and_then(|raw| v.subset(raw, n, "subset"));

        let intervals = obj.get("intervals").and_then(|raw| {
            let items = raw.as_array().or_else(|| {
                v.push("intervals", "expected an array of [lo, hi] pairs");
                None
            })?;
            let mut pairs = Vec::new();
            for (i, item) in items.iter().enumerate() {
                let path = format!("intervals[{i}]");
                let pair = item.as_array().filter(|p| p.len() == 2).or_else(|| {
                    v.push(path.clone(), "expected a [lo, hi] pair");
                    None
                })?;
                let lo = v.value(&pair[0], q, &format!("{path}[0]"))?;
                let hi = v.value(&pair[1], q, &format!("{path}[1]"))?;
                pairs.push((lo, hi));
            }
            match IntervalFamily::new(q, pairs) {
                Ok(family) => Some(family),
                Err(e) => {
                    v.push("intervals", e.to_string());
                    None
                }
            }
        });

        let levels = obj.get("levels").and_then(|raw| {
            let items = raw.as_array().or_else(|| {
                v.push("levels", "expected an array of values");
                None
            })?;
            let mut values = Vec::new();
            for (i, item) in items.iter().enumerate() {
                values.push(v.value(item, q, &format!("levels[{i}]"))?);
            }
            match SupClosedSubgrid::new(q, values) {
                Ok(l) => Some(l),
                Err(e) => {
                    v.push("levels", e.to_string());
                    None
                }
            }
        });

        let epsilon = obj
            .get("epsilon")
            .and_then(|raw| v.value(raw, q, "epsilon"));

        if !v.issues.is_empty() {
            return Err(Error::Instance(v.issues));
        }
        Ok(InstanceDocument {
            ground_size: n,
            denominator: q,
            topology,
            fuzzy_sets,
            maps,
            oracle,
            subset,
            intervals,
            levels,
            epsilon,
        })
    }

    /// Canonical JSON rendering; values as exact strings, keys sorted.
    pub fn to_json(&self) -> Json {
        let mut obj = Map::new();
        obj.insert("ground_size".into(), json!(self.ground_size));
        obj.insert("denominator".into(), json!(self.denominator));
        if let Some(t) = &self.topology {
            obj.insert(
                "topology".into(),
                json!(t.opens().iter().map(|u| u.points()).collect::<Vec<_>>()),
            );
        }
        if !self.fuzzy_sets.is_empty() {
            obj.insert(
                "fuzzy_sets".into(),
                json!(self
                    .fuzzy_sets
                    .iter()
                    .map(|f| f.values().iter().map(Value::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
        }
        if !self.maps.is_empty() {
            let mut entries = Map::new();
            for (name, h) in &self.maps {
                entries.insert(
                    name.clone(),
                    json!({
                        "target_size": h.target_size(),
                        "image": h.image_points(),
                    }),
                );
            }
            obj.insert("maps".into(), Json::Object(entries));
        }
        if let Some(family) = &self.oracle {
            obj.insert(
                "oracle".into(),
                json!(family.iter().map(|u| u.points()).collect::<Vec<_>>()),
            );
        }
        if let Some(y) = self.subset {
            obj.insert("subset".into(), json!(y.points()));
        }
        if let Some(intervals) = &self.intervals {
            obj.insert(
                "intervals".into(),
                json!(intervals
                    .intervals()
                    .iter()
                    .map(|(a, b)| vec![a.to_string(), b.to_string()])
                    .collect::<Vec<_>>()),
            );
        }
        if let Some(levels) = &self.levels {
            obj.insert(
                "levels".into(),
                json!(levels
                    .levels()
                    .iter()
                    .map(Value::to_string)
                    .collect::<Vec<_>>()),
            );
        }
        if let Some(e) = self.epsilon {
            obj.insert("epsilon".into(), json!(e.to_string()));
        }
        Json::Object(obj)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sierpinski_document() {
        let doc =
            InstanceDocument::parse(r#"{"ground_size":2,"denominator":1,"topology":[[],[1],[0,1]]}"#)
                .unwrap();
        assert_eq!(doc.topology.unwrap(), Topology::sierpinski());
    }

    #[test]
    fn value_forms_parse_exactly() {
        let doc = InstanceDocument::parse(
            r#"{"ground_size":2,"denominator":4,"fuzzy_sets":[["3/4",2]],"epsilon":"1/4"}"#,
        )
        .unwrap();
        let f = &doc.fuzzy_sets[0];
        assert_eq!(f.value(0), Value::new(3, 4).unwrap());
        // bare integers are scaled by 1/q
        assert_eq!(f.value(1), Value::new(1, 2).unwrap());
        assert_eq!(doc.epsilon.unwrap(), Value::new(1, 4).unwrap());
    }

    #[test]
    fn unclosed_topology_is_a_positioned_error() {
        let err = InstanceDocument::parse(
            r#"{"ground_size":3,"denominator":1,"topology":[[],[0],[1],[0,1,2]]}"#,
        )
        .unwrap_err();
        match err {
            Error::Instance(issues) => {
                assert_eq!(issues.len(), 1);
                assert_eq!(issues[0].path, "topology");
                assert!(issues[0].message.contains("subbase"));
            }
            other => panic!("expected positioned issues, got {other}"),
        }
    }

    #[test]
    fn subbase_flag_requests_closure() {
        let doc = InstanceDocument::parse(
            r#"{"ground_size":3,"denominator":1,"subbase":true,"topology":[[0,1],[1,2]]}"#,
        )
        .unwrap();
        assert_eq!(doc.topology.unwrap().opens().len(), 5);
    }

    #[test]
    fn missing_full_set_is_reported() {
        let err = InstanceDocument::parse(
            r#"{"ground_size":2,"denominator":1,"topology":[[],[0]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("invalid"));
    }

    #[test]
    fn several_issues_accumulate_with_paths() {
        let err = InstanceDocument::parse(
            r#"{"ground_size":2,"denominator":2,"fuzzy_sets":[[5,"1/2"]],"subset":[7],"bogus":1}"#,
        )
        .unwrap_err();
        match err {
            Error::Instance(issues) => {
                let paths: Vec<&str> = issues.iter().map(|i| i.path.as_str()).collect();
                assert!(paths.contains(&"bogus"));
                assert!(paths.contains(&"fuzzy_sets[0][0]"));
                assert!(paths.contains(&"subset[0]"));
            }
            other => panic!("expected positioned issues, got {other}"),
        }
    }

    #[test]
    fn render_parse_round_trip() {
        let text = r#"{
            "ground_size": 3,
            "denominator": 2,
            "topology": [[], [2], [1,2], [0,1,2]],
            "fuzzy_sets": [[0, 1, 2], ["1/2", "0", "1"]],
            "maps": {"H": {"target_size": 2, "image": [0, 0, 1]}},
            "oracle": [[], [2]],
            "subset": [1, 2],
            "intervals": [["0", "1/2"]],
            "levels": ["0", "1/2", "1"],
            "epsilon": "1/2"
        }"#;
        let doc = InstanceDocument::parse(text).unwrap();
        let round = InstanceDocument::parse(&doc.render()).unwrap();
        assert_eq!(doc, round);
    }
}
