use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use crate::algebra::{MultiplicationTable, ProductDecomposition};
use crate::bases::FlowUpBasis;
use crate::spline::{LabeledGraph, Verification, Violation};

pub fn number(n: &BigInt) -> Value {
    // arbitrary_precision keeps every digit
    Value::Number(n.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

pub fn numbers(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(number).collect())
}

pub fn violations(list: &[Violation]) -> Value {
    Value::Array(
        list.iter()
            .map(|v| {
                json!({
                    "edge": v.edge,
                    "u": v.u,
                    "v": v.v,
                    "label": number(&v.label),
                    "residue_u": number(&v.residue_u),
                    "residue_v": number(&v.residue_v),
                })
            })
            .collect(),
    )
}

pub fn verification(graph: &dyn LabeledGraph, labels: &[BigInt], report: &Verification) -> String {
    let mut out = String::new();
    for e in graph.edges() {
        let (gu, gv) = (&labels[e.u - 1], &labels[e.v - 1]);
        let status = match report.violations.iter().find(|v| v.edge == e.index) {
            None => "OK".to_string(),
            Some(v) => format!("FAIL ({} != {})", v.residue_u, v.residue_v),
        };
        out.push_str(&format!(
            "e_{} (v_{}, v_{}) {} = {} (mod {}): {status}\n",
            e.index,
            e.u,
            e.v,
            gu,
            gv,
            e.label
        ));
    }
    if report.is_ok() {
        out.push_str("spline: yes\n");
    } else {
        out.push_str(&format!("spline: no ({} violated)\n", report.violations.len()));
    }
    out
}

pub fn basis_json(basis: &FlowUpBasis) -> Value {
    json!({
        "kind": basis.kind().to_string(),
        "cycle": numbers(basis.cycle().labels()),
        "basis": basis.elements().iter().map(|g| numbers(g.entries())).collect::<Vec<_>>(),
    })
}

pub fn basis(basis: &FlowUpBasis) -> String {
    let symbol = basis.kind().symbol();
    basis
        .elements()
        .iter()
        .enumerate()
        .map(|(k, g)| format!("{symbol}{k} = {g}\n"))
        .collect()
}

fn terms_json(product: &ProductDecomposition) -> Value {
    Value::Array(
        product
            .terms
            .iter()
            .map(|t| json!({ "index": t.index, "coefficient": number(&t.coefficient) }))
            .collect(),
    )
}

pub fn product_json(product: &ProductDecomposition, symbol: &str) -> Value {
    json!({
        "i": product.i,
        "j": product.j,
        "terms": terms_json(product),
        "rendered": product.render(symbol),
    })
}

pub fn table_json(table: &MultiplicationTable) -> Value {
    let cells: Vec<Value> = table
        .cells
        .iter()
        .flatten()
        .map(|c| json!({ "i": c.i, "j": c.j, "terms": terms_json(c) }))
        .collect();
    json!({
        "kind": table.basis.kind().to_string(),
        "table": cells,
        "phi": table.phi.as_ref().map(number),
    })
}

/// Grid with the basis symbols as row and column headers.
pub fn table(table: &MultiplicationTable) -> String {
    let symbol = table.symbol();
    let n = table.cells.len();
    let header: Vec<String> = (0..n).map(|k| format!("{symbol}{k}")).collect();
    let rows: Vec<Vec<String>> = table
        .cells
        .iter()
        .map(|row| row.iter().map(|c| c.render(symbol)).collect())
        .collect();
    let label_width = header.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|j| {
            rows.iter()
                .map(|r| r[j].len())
                .chain([header[j].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut out = format!("{:label_width$} |", "");
    for (h, w) in header.iter().zip(&widths) {
        out.push_str(&format!(" {h:<w$} |"));
    }
    out.push('\n');
    let rule = label_width + 2 + widths.iter().map(|w| w + 3).sum::<usize>();
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for (h, row) in header.iter().zip(&rows) {
        out.push_str(&format!("{h:label_width$} |"));
        for (cell, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" {cell:<w$} |"));
        }
        out.push('\n');
    }
    if let Some(phi) = &table.phi {
        out.push_str(&format!("phi = {phi}\n"));
    }
    out
}
