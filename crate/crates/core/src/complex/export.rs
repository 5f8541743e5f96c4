//! Structured document and DOT rendering of a complex.

use serde::Serialize;

use super::DevelopedComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexEntry {
    pub id: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<Vec<String>>,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<String>>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexEntry {
    pub vertices: Vec<usize>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexDocument {
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    pub kinds: Vec<String>,
    pub vertices: Vec<VertexEntry>,
    pub chambers: Vec<ChamberEntry>,
    pub simplices: Vec<SimplexEntry>,
}

const PALETTE: [&str; 8] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl DevelopedComplex {
    pub fn to_document(&self) -> ComplexDocument {
        let g = self.oracle().map(|o| o.graph());
        let names = |t| g.map(|g| g.set_names(t));
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| VertexEntry {
                id,
                label: v.label.clone(),
                kind: v.kind.and_then(|k| self.kind_names.get(k).cloned()),
                ty: v.coset.as_ref().and_then(|c| names(c.ty)),
                rep: v.coset.as_ref().and_then(|c| g.map(|g| c.rep.tokens(g))),
                interior: v.interior,
            })
            .collect();
        let chambers = self
            .chambers
            .iter()
            .map(|c| ChamberEntry {
                element: c.element.as_ref().and_then(|w| g.map(|g| w.tokens(g))),
                vertices: c.vertices.clone(),
            })
            .collect();
        let simplices = self
            .simplices()
            .into_iter()
            .map(|s| SimplexEntry { ty: self.simplex_type(&s).and_then(names), vertices: s })
            .collect();
        ComplexDocument {
            radius: self.radius,
            oracle: self.oracle().map(|o| o.mode().to_string()),
            kinds: self.kind_names.clone(),
            vertices,
            chambers,
            simplices,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("complex documents always serialize")
    }

    /// 1-skeleton in DOT, vertices filled by kind and dashed when on the boundary.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph complex {\n  node [shape=circle, style=filled, fontsize=10];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let color = v.kind.map_or("#ffffff", |k| PALETTE[k % PALETTE.len()]);
            let style = if v.interior { "filled" } else { "filled,dashed" };
            out.push_str(&format!(
                "  v{i} [label=\"{}\", fillcolor=\"{color}\", style=\"{style}\"];\n",
                escape(&v.label)
            ));
        }
        for (u, w) in self.edges() {
            out.push_str(&format!("  v{u} -- v{w};\n"));
        }
        out.push_str("}\n");
        out
    }
}
