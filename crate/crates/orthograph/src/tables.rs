//! Regenerating the polynomial tables and diffing them against the
//! transcribed golden files.

use std::collections::BTreeMap;

use orthograph_core::graphs::{enumerate_connected, IsoKey};
use orthograph_core::polyspace::{orthopoly, orthopoly_within, Budget};
use orthograph_core::symnum::Style;
use orthograph_core::{Graph, InvariantPoly, Result, Setting};

use crate::format::{self, ParseError};

pub const GAUSSIAN_GOLDEN: &str = include_str!("../tables/gaussian.txt");
pub const SPHERICAL_GOLDEN: &str = include_str!("../tables/spherical.txt");
pub const BOOLEAN_GOLDEN: &str = include_str!("../tables/boolean.txt");

pub fn golden_source(setting: Setting) -> &'static str {
    match setting {
        Setting::Gaussian => GAUSSIAN_GOLDEN,
        Setting::Spherical => SPHERICAL_GOLDEN,
        Setting::Boolean => BOOLEAN_GOLDEN,
    }
}

/// Default table extent: edges for Gaussian and spherical, degree in the
/// vectors for Boolean.
pub fn default_extent(setting: Setting) -> usize {
    match setting {
        Setting::Gaussian => 3,
        Setting::Spherical => 4,
        Setting::Boolean => 8,
    }
}

/// Extent through which the golden tables list every graph. The Boolean
/// table is complete through degree 6 and adds two degree-8 rows.
pub fn golden_extent(setting: Setting) -> usize {
    match setting {
        Setting::Boolean => 6,
        s => default_extent(s),
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub graph: Graph,
    pub poly: InvariantPoly,
}

impl TableRow {
    /// Degree column: edges, or degree in the vectors for Boolean.
    pub fn degree(&self) -> usize {
        match self.graph.setting() {
            Setting::Boolean => self.graph.poly_degree(),
            _ => self.graph.num_edges(),
        }
    }
}

/// Connected graphs in the table, in enumeration order. Boolean `extent`
/// bounds the degree in the vectors.
pub fn table_graphs(setting: Setting, extent: usize) -> Vec<Graph> {
    match setting {
        Setting::Gaussian | Setting::Spherical => enumerate_connected(setting, extent + 1, extent),
        Setting::Boolean => enumerate_connected(setting, extent, extent / 2)
            .into_iter()
            .filter(|g| g.poly_degree() <= extent)
            .collect(),
    }
}

pub fn generate(setting: Setting, extent: usize) -> Result<Vec<TableRow>> {
    let budget = Budget { max_edges: extent.max(5), max_union_edges: 2 * extent.max(5) };
    table_graphs(setting, extent)
        .into_iter()
        .map(|g| Ok(TableRow { poly: orthopoly_within(&g, &budget)?, graph: g }))
        .collect()
}

#[derive(Clone, Debug)]
pub struct GoldenRow {
    pub line: usize,
    pub graph: Graph,
    pub expected: InvariantPoly,
    pub source: String,
}

pub fn parse_golden(setting: Setting, src: &str) -> std::result::Result<Vec<GoldenRow>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let lift = |e: ParseError| match e {
            ParseError::Syntax { column, message, .. } => ParseError::Syntax { line: i + 1, column, message },
            other => other,
        };
        let (m, p) = t.split_once('|').ok_or_else(|| ParseError::Syntax {
            line: i + 1,
            column: 1,
            message: "expected `monomial | polynomial`".into(),
        })?;
        let graph = if m.trim() == "1" {
            Graph::empty(setting, &[])
        } else {
            format::parse_monomial(m.trim(), setting).map_err(lift)?
        };
        let expected = format::parse_poly(p.trim(), setting, Some(graph.vertices())).map_err(lift)?;
        out.push(GoldenRow { line: i + 1, graph, expected, source: p.trim().to_string() });
    }
    Ok(out)
}

pub fn golden(setting: Setting) -> Vec<GoldenRow> {
    parse_golden(setting, golden_source(setting)).expect("shipped golden tables parse")
}

#[derive(Clone, Debug)]
pub struct RowCheck {
    pub row: GoldenRow,
    pub computed: InvariantPoly,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub setting: Setting,
    pub rows: Vec<RowCheck>,
    /// Enumerated graphs with no golden row.
    pub missing: Vec<Graph>,
    /// Golden rows outside the enumeration.
    pub extra: Vec<Graph>,
}

impl GoldenReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.rows.iter().all(|r| r.matches)
    }
}

/// Recomputes every golden row and checks that the golden rows cover the
/// enumerated graphs up to isomorphism.
pub fn check_golden(setting: Setting) -> Result<GoldenReport> {
    let rows = golden(setting);
    let mut checks = Vec::new();
    let mut seen: BTreeMap<IsoKey, Graph> = BTreeMap::new();
    for row in rows {
        let computed = orthopoly(&row.graph)?;
        let matches = computed == row.expected;
        seen.insert(row.graph.iso_key(), row.graph.clone());
        checks.push(RowCheck { row, computed, matches });
    }
    let enumerated = table_graphs(setting, golden_extent(setting));
    let missing: Vec<Graph> = enumerated.iter().filter(|g| !seen.contains_key(&g.iso_key())).cloned().collect();
    let enumerated_keys: Vec<IsoKey> = enumerated.iter().map(Graph::iso_key).collect();
    let extra = seen
        .iter()
        .filter(|(k, _)| !enumerated_keys.contains(k))
        .map(|(_, g)| g.clone())
        .collect();
    Ok(GoldenReport { setting, rows: checks, missing, extra })
}

pub fn render_text(rows: &[TableRow], style: Style) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{} | {} | {}\n",
            r.degree(),
            r.graph.monomial_string(style),
            r.poly.render(style)
        ));
    }
    out
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("degree,monomial,polynomial\n");
    for r in rows {
        out.push_str(&format!(
            "{},\"{}\",\"{}\"\n",
            r.degree(),
            r.graph.monomial_string(Style::Ascii),
            r.poly.render(Style::Ascii)
        ));
    }
    out
}

pub fn render_latex(rows: &[TableRow]) -> String {
    let mut out = String::from("\\begin{tabular}{|l|c|c|}\n\\hline\nDegree & $m_G$ & $p_G$\\\\\n\\hline\n");
    for r in rows {
        out.push_str(&format!(
            "{} & ${}$ & ${}$\\\\\n\\hline\n",
            r.degree(),
            r.graph.monomial_string(Style::Latex),
            r.poly.render(Style::Latex)
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn render_json(rows: &[TableRow]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| {
                serde_json::json!({
                    "degree": r.degree(),
                    "graph": format::graph_to_json(&r.graph),
                    "poly": format::poly_to_json(&r.poly),
                })
            })
            .collect(),
    )
}
