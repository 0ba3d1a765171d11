//! Markdown and CSV renderings of the reports.

use std::fmt::Write as _;

use crate::analysis::{tables, ClassifyCell, PropertyReport, TensorRow, Verdict};
use crate::clifford::{Multivector, NAMES};
use crate::error::Result;
use crate::verify::Check;

use super::RootsResult;

fn v(verdict: &Verdict) -> &'static str {
    if verdict.holds() {
        "holds"
    } else {
        "fails"
    }
}

fn witness_text(verdict: &Verdict) -> String {
    match verdict.witness() {
        None => String::new(),
        Some(w) => format!("{} at ({}): {} != {}", w.identity, w.inputs.join(", "), w.lhs, w.rhs),
    }
}

fn opt(m: &Option<Multivector>) -> String {
    m.as_ref().map_or_else(|| "none".into(), |x| x.to_string())
}

fn md_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(s, "| {} |", r.join(" | ").replace('\n', " "));
    }
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8 csv"))
}

pub fn eval_csv(m: &Multivector) -> Result<String> {
    csv_table(&NAMES, [m.coords().iter().map(|c| c.to_string()).collect()])
}

fn property_pairs(r: &PropertyReport) -> Vec<(&'static str, String)> {
    vec![
        ("algebra", r.algebra.clone()),
        ("carrier", r.carrier.clone()),
        ("dim", r.dim.to_string()),
        ("norm", r.norm.to_string()),
        ("unit", opt(&r.unit)),
        ("paraunit", opt(&r.paraunit)),
        ("idempotent", opt(&r.idempotent_witness)),
        ("commutative", v(&r.flags.commutative).into()),
        ("associative", v(&r.flags.associative).into()),
        ("alternative", v(&r.flags.alternative).into()),
        ("flexible", v(&r.flags.flexible).into()),
        ("composition", v(&r.composition).into()),
        ("symmetric composition", v(&r.symmetric_composition).into()),
        ("norm signature", format!("{:?}", r.norm_signature)),
        (
            "intrinsic norm signature",
            r.intrinsic_norm_signature.map_or("none".into(), |s| format!("{s:?}")),
        ),
        ("dim Der", r.der_dim.to_string()),
        ("label", r.label.clone()),
    ]
}

pub fn property_md(r: &PropertyReport) -> String {
    let mut s = md_table(
        &["property", "value"],
        property_pairs(r).into_iter().map(|(k, v)| vec![k.to_string(), v]),
    );
    for n in &r.notes {
        let _ = writeln!(s, "\n- {n}");
    }
    s
}

pub fn property_csv(r: &PropertyReport) -> Result<String> {
    csv_table(
        &["property", "value"],
        property_pairs(r).into_iter().map(|(k, v)| vec![k.to_string(), v]),
    )
}

fn matrix_rows(cells: &[ClassifyCell]) -> impl Iterator<Item = Vec<String>> + '_ {
    cells.iter().map(|c| {
        vec![
            c.signature.to_string(),
            c.product.to_string(),
            c.claimed.clone(),
            c.computed.clone(),
            c.verdict.to_string(),
            c.witness.as_ref().map_or(String::new(), |w| {
                format!("{} at ({}): {} != {}", w.identity, w.inputs.join(", "), w.lhs, w.rhs)
            }),
        ]
    })
}

const MATRIX_HEADER: [&str; 6] = ["signature", "product", "claimed", "computed", "verdict", "witness"];

pub fn matrix_md(cells: &[ClassifyCell]) -> String {
    md_table(&MATRIX_HEADER, matrix_rows(cells))
}

pub fn matrix_csv(cells: &[ClassifyCell]) -> Result<String> {
    csv_table(&MATRIX_HEADER, matrix_rows(cells))
}

const TABLE1_HEADER: [&str; 10] = [
    "label",
    "realization",
    "ordered",
    "computed",
    "commutative",
    "associative",
    "alternative",
    "flexible",
    "composition",
    "agrees",
];

fn table1_rows(rows: &[tables::Table1Row]) -> impl Iterator<Item = Vec<String>> + '_ {
    rows.iter().map(|r| {
        vec![
            r.label.to_string(),
            r.realization.clone(),
            r.totally_ordered.to_string(),
            r.computed_label.clone(),
            v(&r.commutative).into(),
            v(&r.associative).into(),
            v(&r.alternative).into(),
            v(&r.flexible).into(),
            v(&r.composition).into(),
            r.agrees.to_string(),
        ]
    })
}

pub fn table1_md(rows: &[tables::Table1Row]) -> String {
    md_table(&TABLE1_HEADER, table1_rows(rows))
}

pub fn table1_csv(rows: &[tables::Table1Row]) -> Result<String> {
    csv_table(&TABLE1_HEADER, table1_rows(rows))
}

const TABLE2_HEADER: [&str; 5] = ["row", "column", "identity", "verdict", "witness"];

fn table2_rows(cells: &[tables::Table2Cell]) -> impl Iterator<Item = Vec<String>> + '_ {
    cells.iter().map(|c| {
        vec![
            c.row.to_string(),
            c.column.to_string(),
            c.identity.clone(),
            if c.trivial { "trivial".into() } else { v(&c.verdict).into() },
            witness_text(&c.verdict),
        ]
    })
}

pub fn table2_md(cells: &[tables::Table2Cell]) -> String {
    md_table(&TABLE2_HEADER, table2_rows(cells))
}

pub fn table2_csv(cells: &[tables::Table2Cell]) -> Result<String> {
    csv_table(&TABLE2_HEADER, table2_rows(cells))
}

fn section2_rows(t: &tables::Section2Table) -> impl Iterator<Item = Vec<String>> + '_ {
    t.rows.iter().map(|r| {
        let mut row = vec![r.property.to_string()];
        for i in 0..3 {
            row.push(format!("{} / {}", r.claimed[i], r.computed[i]));
        }
        row
    })
}

pub fn section2_md(t: &tables::Section2Table) -> String {
    let mut header = vec!["property (claimed / computed)"];
    header.extend(t.columns.iter().map(String::as_str));
    md_table(&header, section2_rows(t))
}

pub fn section2_csv(t: &tables::Section2Table) -> Result<String> {
    let mut header = vec!["property"];
    header.extend(t.columns.iter().map(String::as_str));
    csv_table(&header, section2_rows(t))
}

const SECTION3_HEADER: [&str; 7] = [
    "signature",
    "subalgebra",
    "norm",
    "expected",
    "computed",
    "composition",
    "label",
];

fn section3_rows(rows: &[tables::SubalgebraRow]) -> impl Iterator<Item = Vec<String>> + '_ {
    rows.iter().map(|r| {
        vec![
            r.signature.to_string(),
            r.subalgebra.to_string(),
            r.norm.to_string(),
            format!("{:?}", r.expected_signature),
            format!("{:?}", r.computed_signature),
            v(&r.composition).into(),
            r.label.clone(),
        ]
    })
}

pub fn section3_md(rows: &[tables::SubalgebraRow], tensor: &[(String, Vec<TensorRow>)]) -> String {
    let mut s = md_table(&SECTION3_HEADER, section3_rows(rows));
    s.push('\n');
    s += &md_table(
        &["signature", "involution", "rule", "verdict"],
        tensor.iter().flat_map(|(sig, rs)| {
            rs.iter().map(move |r| {
                vec![
                    sig.clone(),
                    format!("{:?}", r.involution),
                    r.rule.to_string(),
                    v(&r.verdict).into(),
                ]
            })
        }),
    );
    s
}

pub fn section3_csv(rows: &[tables::SubalgebraRow]) -> Result<String> {
    csv_table(&SECTION3_HEADER, section3_rows(rows))
}

pub fn roots_md(r: &RootsResult) -> String {
    let rep = &r.report;
    let mut s = md_table(
        &["quantity", "value"],
        [
            vec!["count".into(), format!("{} (expected {})", rep.count, r.expected_count)],
            vec!["rank".into(), rep.rank.to_string()],
            vec!["form".into(), format!("{} = {}", rep.form, rep.form_value)],
            vec!["type".into(), format!("{} (expected {})", rep.type_label, r.expected_type)],
            vec![
                "inner products".into(),
                rep.gram_spectrum
                    .iter()
                    .map(|(k, n)| format!("{k}: {n}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            ],
        ],
    );
    if let Some(search) = &r.search {
        let _ = writeln!(
            s,
            "\nSeed search: {} candidates, {} hits, {} over cap, {} left the grid. First hit: {}.",
            search.scanned,
            search.hits,
            search.cap_exceeded,
            search.left_grid,
            opt(&search.first_seed)
        );
    }
    s
}

const CHECK_HEADER: [&str; 5] = ["check", "hard", "expected", "verdict", "passed"];

fn check_rows(checks: &[Check]) -> impl Iterator<Item = Vec<String>> + '_ {
    checks.iter().map(|c| {
        vec![
            c.name.clone(),
            c.hard.to_string(),
            format!("{:?}", c.expected).to_lowercase(),
            v(&c.verdict).into(),
            c.passed.to_string(),
        ]
    })
}

pub fn checks_md(checks: &[Check]) -> String {
    md_table(&CHECK_HEADER, check_rows(checks))
}

pub fn checks_csv(checks: &[Check]) -> Result<String> {
    csv_table(&CHECK_HEADER, check_rows(checks))
}
