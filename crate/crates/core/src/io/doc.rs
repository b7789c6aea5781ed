//! JSON document for fabrics and configurations. A bare fabric is a document
//! with no bindings.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::fabric::{build, Configuration, Realization};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FabricDoc {
    pub n: usize,
    pub realization: Realization,
    pub nodes: Vec<NodeDoc>,
    pub taps: TapsDoc,
    #[serde(default)]
    pub bindings: Vec<BindingDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: usize,
    pub level: usize,
    #[serde(rename = "in")]
    pub inputs: [String; 2],
    pub max_out: String,
    pub min_out: String,
    pub garbage: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TapsDoc {
    #[serde(rename = "T")]
    pub thresholds: Vec<String>,
    #[serde(rename = "S")]
    pub single_index: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BindingDoc {
    pub name: String,
    #[serde(rename = "K")]
    pub index_set: BTreeSet<usize>,
    pub line: String,
}

pub fn fabric_doc(config: &Configuration) -> FabricDoc {
    let fabric = config.fabric();
    FabricDoc {
        n: fabric.n(),
        realization: fabric.realization(),
        nodes: fabric
            .nodes()
            .iter()
            .map(|node| NodeDoc {
                id: node.id,
                level: node.level,
                inputs: node.inputs.clone(),
                max_out: node.max_out.clone(),
                min_out: node.min_out.clone(),
                garbage: node.garbage.clone(),
            })
            .collect(),
        taps: TapsDoc {
            thresholds: fabric.thresholds().iter().map(|t| t.wire.clone()).collect(),
            single_index: fabric.single_index().iter().map(|t| t.wire.clone()).collect(),
        },
        bindings: config
            .bindings()
            .iter()
            .map(|b| BindingDoc { name: b.name.clone(), index_set: b.index_set.clone(), line: b.wire.clone() })
            .collect(),
    }
}

pub fn emit_fabric_doc(config: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&fabric_doc(config)).expect("document serializes");
    s.push('\n');
    s
}

/// Parses a document and rebuilds the configuration it describes. The
/// structural fields must match what the generator produces for `n` and
/// `realization`.
pub fn parse_fabric_doc(text: &str) -> Result<Configuration, FormatError> {
    let doc: FabricDoc = serde_json::from_str(text)
        .map_err(|e| FormatError::new(e.line().max(1), e.column().max(1), e.to_string()))?;
    let semantic = |msg: String, hint: &str| FormatError::new(1, 1, msg).expecting(hint.to_string());
    let fabric = build(doc.n, doc.realization).map_err(|e| semantic(e.to_string(), "n in 1..=12"))?;
    let fabric = Arc::new(fabric);
    let bindings =
        doc.bindings.iter().map(|b| (b.name.clone(), b.index_set.clone())).collect::<Vec<_>>();
    let config = Configuration::new(fabric, bindings).map_err(|e| semantic(e.to_string(), "bindings[].K within 0..=n"))?;
    let rebuilt = fabric_doc(&config);
    if rebuilt.nodes != doc.nodes {
        let i = rebuilt.nodes.iter().zip(&doc.nodes).position(|(a, b)| a != b).unwrap_or(rebuilt.nodes.len().min(doc.nodes.len()));
        return Err(semantic(format!("node {i} does not match the generated structure"), "nodes as generated"));
    }
    if rebuilt.taps != doc.taps {
        return Err(semantic("taps do not match the generated structure".into(), "taps as generated"));
    }
    if let Some((a, b)) = rebuilt.bindings.iter().zip(&doc.bindings).find(|(a, b)| a.line != b.line) {
        return Err(semantic(format!("binding `{}` names line `{}`", b.name, b.line), &a.line));
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare(n: usize, r: Realization) -> Configuration {
        Arc::new(build(n, r).unwrap()).unconfigured()
    }

    #[test]
    fn three_input_kerntopf_has_three_nodes() {
        let doc = fabric_doc(&bare(3, Realization::Kerntopf));
        assert_eq!(doc.nodes.len(), 3);
        assert_eq!(doc.taps.thresholds, ["n2.max", "n2.min", "n1.min"]);
        assert_eq!(doc.taps.single_index, ["s1", "s2", "n1.min"]);
        let json = emit_fabric_doc(&bare(3, Realization::Kerntopf));
        assert!(json.contains("\"max_out\""));
        assert!(json.contains("\"T\""));
    }

    #[test]
    fn index_out_of_range_is_rejected() {
        let mut doc = fabric_doc(&bare(3, Realization::Kerntopf));
        doc.bindings.push(BindingDoc { name: "O1".into(), index_set: BTreeSet::from([5]), line: "acc0".into() });
        let e = parse_fabric_doc(&serde_json::to_string(&doc).unwrap()).unwrap_err();
        assert!(e.message.contains("index 5"), "{e}");
    }

    #[test]
    fn tampered_structure_is_rejected() {
        let mut doc = fabric_doc(&bare(3, Realization::Picton));
        doc.nodes[1].max_out = "zz".into();
        let e = parse_fabric_doc(&serde_json::to_string(&doc).unwrap()).unwrap_err();
        assert!(e.message.contains("node 1"));
        let mut doc = fabric_doc(&bare(3, Realization::Picton));
        doc.taps.single_index.pop();
        assert!(parse_fabric_doc(&serde_json::to_string(&doc).unwrap()).is_err());
    }

    #[test]
    fn json_errors_have_positions() {
        let e = parse_fabric_doc("{\n  \"n\": 3,\n  \"realization\": \"nand\"\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_fabric_doc("{\"n\": 0, \"realization\": \"kerntopf\", \"nodes\": [], \"taps\": {\"T\": [], \"S\": []}}").is_err());
    }
}
