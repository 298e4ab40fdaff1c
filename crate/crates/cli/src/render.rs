//! Output builders: human tables, CSV (comma, LF, header row) and
//! versioned JSON (`"schema": 1`). Everything is assembled into a string
//! first so output stays deterministic byte for byte.

use num_bigint::BigUint;
use serde_json::{json, Value};

use pcubed_core::combinat::{Census, MultVec};
use pcubed_core::cyclo::CycloNum;
use pcubed_core::groups::{ConjClasses, Group, GroupElem, GroupFamily};
use pcubed_core::irreps::IrrepSet;
use pcubed_core::matrix::CycloMatrix;
use pcubed_core::solver::InvSpace;
use pcubed_core::verify::{CountRow, SweepReport};
use pcubed_core::OddPrime;

pub(crate) use crate::Format;

const SCHEMA: u32 = 1;

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_doc(command: &str, body: Value) -> String {
    let mut root = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(r), Value::Object(b)) = (&mut root, body) {
        r.extend(b);
    }
    let mut out = serde_json::to_string_pretty(&root).expect("serializable");
    out.push('\n');
    out
}

/// Entry renderer: coefficient arrays are exact rational strings; the
/// compact form collapses pure roots of unity to `w^k`.
fn entry_coeffs(v: &CycloNum) -> Value {
    Value::Array(
        v.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn matrix_json(set: &IrrepSet, m: &CycloMatrix, compact: bool) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| {
                            let v = m.get(r, c);
                            if compact {
                                Value::String(set.format_value(v))
                            } else {
                                entry_coeffs(v)
                            }
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_table(set: &IrrepSet, m: &CycloMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| set.format_value(m.get(r, c)))
                .collect()
        })
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        out.push_str("[ ");
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:>width$}"));
        }
        out.push_str(" ]\n");
    }
    out
}

pub fn groups_output(
    format: Format,
    group: &Group,
    center: &[GroupElem],
    classes: &ConjClasses,
) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "family {}  p {}  order {}\n",
                group.family(),
                group.prime(),
                group.order()
            ));
            out.push_str(&format!(
                "generators: {}\n",
                group
                    .generators()
                    .iter()
                    .zip(group.generator_names())
                    .map(|(g, n)| format!("{n} = {}", group.format_elem(*g)))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            out.push_str(&format!("center size: {}\n", center.len()));
            out.push_str(&format!("conjugacy classes: {}\n", classes.count()));
            for c in 0..classes.count() {
                out.push_str(&format!(
                    "  class {c}: size {}, representative {}\n",
                    classes.size(c),
                    group.format_elem(classes.representative(c))
                ));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("class,representative,size\n");
            for c in 0..classes.count() {
                out.push_str(&format!(
                    "{c},{},{}\n",
                    csv_field(&group.format_elem(classes.representative(c))),
                    classes.size(c)
                ));
            }
            out
        }
        Format::Json => json_doc(
            "groups",
            json!({
                "family": group.family().tag(),
                "p": group.prime().get(),
                "order": group.order(),
                "center_size": center.len(),
                "classes": (0..classes.count())
                    .map(|c| json!({
                        "representative": group.format_elem(classes.representative(c)),
                        "size": classes.size(c),
                    }))
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn irreps_output(format: Format, set: &IrrepSet) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "family {}  p {}  irreps {}\n",
                set.group().family(),
                set.group().prime(),
                set.count()
            ));
            out.push_str(&irrep_order_lines(set));
            out.push_str("\ncharacter table (rows: irreps, columns: class representatives)\n");
            out.push_str(&set.character_table_csv());
            out
        }
        Format::Csv => set.character_table_csv(),
        Format::Json => {
            let irreps: Vec<Value> = set
                .irreps()
                .iter()
                .map(|ir| {
                    json!({
                        "index": ir.index(),
                        "degree": ir.degree(),
                        "dual": ir.dual_index(),
                        "gen_images": ir
                            .gen_images()
                            .iter()
                            .map(|m| matrix_json(set, m, false))
                            .collect::<Vec<_>>(),
                        "character": (0..set.classes().count())
                            .map(|c| set.format_value(&set.character_value(ir.index(), c)))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_doc(
                "irreps",
                json!({
                    "family": set.group().family().tag(),
                    "p": set.group().prime().get(),
                    "classes": (0..set.classes().count())
                        .map(|c| set.group().format_elem(set.classes().representative(c)))
                        .collect::<Vec<_>>(),
                    "irreps": irreps,
                }),
            )
        }
    }
}

/// The frozen order, echoed so multiplicity vectors can be written
/// without reading source: index, degree, dual partner.
fn irrep_order_lines(set: &IrrepSet) -> String {
    let mut out = String::from("irrep order (index: degree, dual):\n");
    for ir in set.irreps() {
        out.push_str(&format!(
            "  {:>3}: degree {}, dual {}\n",
            ir.index(),
            ir.degree(),
            ir.dual_index()
        ));
    }
    out
}

pub fn count_output(
    format: Format,
    family: GroupFamily,
    p: OddPrime,
    rows: &[(u64, String)],
) -> String {
    match format {
        Format::Table => {
            let mut out = format!("representations of {family} (p = {})\n", p.get());
            for (n, c) in rows {
                out.push_str(&format!("  n = {n}: {c}\n"));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,count\n");
            for (n, c) in rows {
                out.push_str(&format!("{n},{c}\n"));
            }
            out
        }
        Format::Json => json_doc(
            "count",
            json!({
                "family": family.tag(),
                "p": p.get(),
                "counts": rows
                    .iter()
                    .map(|(n, c)| json!({ "n": n, "count": c }))
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn census_output(
    format: Format,
    family: GroupFamily,
    p: OddPrime,
    rows: &[Census],
) -> String {
    match format {
        Format::Table => {
            let mut out = format!("census for {family} (p = {})\n", p.get());
            out.push_str(&format!(
                "{:>4}  {:>16}  {:>16}  {:>16}\n",
                "n", "total", "nondegenerate", "degenerate_only"
            ));
            for r in rows {
                out.push_str(&format!(
                    "{:>4}  {:>16}  {:>16}  {:>16}\n",
                    r.n, r.total, r.nondegenerate_admitting, r.degenerate_only
                ));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,total,nondegenerate,degenerate_only\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.n, r.total, r.nondegenerate_admitting, r.degenerate_only
                ));
            }
            out
        }
        Format::Json => json_doc(
            "census",
            json!({
                "family": family.tag(),
                "p": p.get(),
                "rows": rows
                    .iter()
                    .map(|r| json!({
                        "n": r.n,
                        "total": r.total.to_string(),
                        "nondegenerate": r.nondegenerate_admitting.to_string(),
                        "degenerate_only": r.degenerate_only.to_string(),
                    }))
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn dim_output(
    format: Format,
    set: &IrrepSet,
    k: &MultVec,
    dim: &BigUint,
    sym: &BigUint,
    skw: &BigUint,
    oracle: Option<(usize, bool)>,
    basis: Option<&InvSpace>,
    compact: bool,
) -> String {
    match format {
        Format::Table => {
            let mut out = irrep_order_lines(set);
            out.push_str(&format!(
                "k = ({}), degree n = {}\n",
                k.k()
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
                k.degree()
            ));
            out.push_str(&format!("invariant dimension: {dim}\n"));
            out.push_str(&format!("symmetric dimension: {sym}\n"));
            out.push_str(&format!("skew dimension: {skw}\n"));
            if let Some((od, matches)) = oracle {
                out.push_str(&format!(
                    "oracle dimension: {od} ({})\n",
                    if matches { "match" } else { "MISMATCH" }
                ));
            }
            if let Some(space) = basis {
                out.push_str(&format!(
                    "basis blocks touched: {:?}\n",
                    space.block_support.iter().collect::<Vec<_>>()
                ));
                for (i, m) in space.basis.iter().enumerate() {
                    out.push_str(&format!("basis matrix {i}:\n"));
                    out.push_str(&matrix_table(set, m));
                }
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("quantity,value\n");
            out.push_str(&format!("invariant_dim,{dim}\n"));
            out.push_str(&format!("symmetric_dim,{sym}\n"));
            out.push_str(&format!("skew_dim,{skw}\n"));
            if let Some((od, matches)) = oracle {
                out.push_str(&format!("oracle_dim,{od}\n"));
                out.push_str(&format!("oracle_match,{matches}\n"));
            }
            if let Some(space) = basis {
                out.push_str("matrix,row,col,value\n");
                for (i, m) in space.basis.iter().enumerate() {
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            let v = m.get(r, c);
                            if !v.is_zero() {
                                out.push_str(&format!(
                                    "{i},{r},{c},{}\n",
                                    csv_field(&set.format_value(v))
                                ));
                            }
                        }
                    }
                }
            }
            out
        }
        Format::Json => {
            let mut body = json!({
                "family": k.family().tag(),
                "p": k.prime().get(),
                "k": k.k(),
                "n": k.degree(),
                "invariant_dim": dim.to_string(),
                "symmetric_dim": sym.to_string(),
                "skew_dim": skw.to_string(),
            });
            if let Some((od, matches)) = oracle {
                body["oracle"] = json!({ "dimension": od, "matches": matches });
            }
            if let Some(space) = basis {
                body["basis"] = Value::Array(
                    space
                        .basis
                        .iter()
                        .map(|m| matrix_json(set, m, compact))
                        .collect(),
                );
                body["block_support"] = json!(space
                    .block_support
                    .iter()
                    .map(|&(i, j)| vec![i, j])
                    .collect::<Vec<_>>());
            }
            json_doc("dim", body)
        }
    }
}

pub fn witness_output(
    format: Format,
    set: &IrrepSet,
    k: &MultVec,
    witness: Option<&CycloMatrix>,
    compact: bool,
) -> String {
    match format {
        Format::Table => match witness {
            Some(m) if m.rows() == 0 => {
                "witness: empty representation (0 x 0 matrix)\n".to_string()
            }
            Some(m) => {
                let mut out = format!(
                    "non-degenerate invariant form for k = ({}):\n",
                    k.k()
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                );
                out.push_str(&matrix_table(set, m));
                out
            }
            None => "none\n".to_string(),
        },
        Format::Csv => match witness {
            Some(m) => {
                let mut out = String::new();
                for r in 0..m.rows() {
                    let row: Vec<String> = (0..m.cols())
                        .map(|c| csv_field(&set.format_value(m.get(r, c))))
                        .collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            None => "none\n".to_string(),
        },
        Format::Json => json_doc(
            "witness",
            json!({
                "family": k.family().tag(),
                "p": k.prime().get(),
                "k": k.k(),
                "n": k.degree(),
                "witness": witness.map(|m| matrix_json(set, m, compact)),
            }),
        ),
    }
}

fn count_row_json(row: &CountRow) -> Value {
    json!({
        "n": row.n,
        "formula": row.formula.to_string(),
        "enumerated": row.enumerated.to_string(),
        "nondegenerate_formula": row.nondeg_formula.to_string(),
        "nondegenerate_enumerated": row.nondeg_enumerated.to_string(),
        "matches": row.matches(),
    })
}

pub fn verify_output(format: Format, report: &SweepReport) -> String {
    match format {
        Format::Table => {
            let mut out = format!(
                "verification sweep: p = {}, seed = {}\n",
                report.p, report.seed
            );
            for fam in &report.families {
                out.push_str(&format!(
                    "family {}: {} vectors checked, {} issue(s)\n",
                    fam.family,
                    fam.vectors_checked,
                    fam.issues.len()
                ));
                for row in &fam.counts {
                    out.push_str(&format!(
                        "  n = {:>2}: count {} vs enumerated {} | nondegenerate {} vs {} [{}]\n",
                        row.n,
                        row.formula,
                        row.enumerated,
                        row.nondeg_formula,
                        row.nondeg_enumerated,
                        if row.matches() { "ok" } else { "MISMATCH" }
                    ));
                }
                for issue in &fam.issues {
                    out.push_str(&format!(
                        "  ISSUE {:?} at k = {:?}: {}\n",
                        issue.kind, issue.k, issue.detail
                    ));
                }
            }
            out.push_str(if report.is_clean() {
                "verdict: all formulas match the oracle\n"
            } else {
                "verdict: MISMATCHES FOUND\n"
            });
            out
        }
        Format::Csv => {
            let mut out = String::from("family,vectors_checked,issues,counts_ok\n");
            for fam in &report.families {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fam.family,
                    fam.vectors_checked,
                    fam.issues.len(),
                    fam.counts.iter().all(CountRow::matches)
                ));
            }
            out
        }
        Format::Json => json_doc(
            "verify",
            json!({
                "p": report.p,
                "seed": report.seed,
                "clean": report.is_clean(),
                "families": report
                    .families
                    .iter()
                    .map(|f| json!({
                        "family": f.family.tag(),
                        "vectors_checked": f.vectors_checked,
                        "counts": f.counts.iter().map(count_row_json).collect::<Vec<_>>(),
                        "issues": f
                            .issues
                            .iter()
                            .map(|i| json!({
                                "kind": format!("{:?}", i.kind),
                                "k": i.k,
                                "detail": i.detail,
                            }))
                            .collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}

pub fn charp_output(format: Format, n: usize, space: &InvSpace) -> String {
    match format {
        Format::Table => {
            let mut out = format!("characteristic-p mode, degree n = {n}\n");
            out.push_str(&format!("invariant space dimension: {}\n", space.dimension));
            out.push_str(&format!(
                "basis: all {} matrix units; the identity is a non-degenerate member\n",
                space.basis.len()
            ));
            out
        }
        Format::Csv => format!("n,dimension\n{n},{}\n", space.dimension),
        Format::Json => json_doc(
            "charp",
            json!({
                "n": n,
                "dimension": space.dimension,
                "basis_units": space
                    .basis
                    .iter()
                    .map(|m| {
                        // Each basis element is a matrix unit E_{r,c}.
                        for r in 0..m.rows() {
                            for c in 0..m.cols() {
                                if !m.get(r, c).is_zero() {
                                    return json!({ "row": r, "col": c });
                                }
                            }
                        }
                        json!(null)
                    })
                    .collect::<Vec<_>>(),
            }),
        ),
    }
}
