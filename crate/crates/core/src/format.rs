//! Serialized forms: JSON documents (all carrying `"schema": 1`), DOT and
//! TSV. Output is deterministic; map keys are emitted sorted.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::central_leaf::{LeafDatum, RootSets};
use crate::kottwitz::NewtonPoset;
use crate::root_datum::RationalCoweight;
use crate::scalar::Scalar;
use crate::strata::StrataReport;

pub const SCHEMA_VERSION: u32 = 1;

fn compact<T: Scalar>(v: &RationalCoweight<T>) -> String {
    v.to_strings().join(",")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn poset_value<T: Scalar>(poset: &NewtonPoset<T>) -> Value {
    let elements: Vec<Value> = poset
        .elements()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "nu": c.newton_point.to_strings(),
                "kappa": c.kottwitz_point.to_string(),
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "group": poset.datum().name().unwrap_or(""),
        "mu": poset.mu().to_strings(),
        "pi1": poset.pi1().to_string(),
        "kappa": poset.kottwitz_point().to_string(),
        "elements": elements,
        "hasse": poset.hasse().iter().map(|&(hi, lo)| [hi, lo]).collect::<Vec<_>>(),
        "b_min": poset.b_min(),
        "b_max": poset.b_max(),
    })
}

pub fn poset_json<T: Scalar>(poset: &NewtonPoset<T>) -> String {
    pretty(&poset_value(poset))
}

/// One node per class, labeled by its Newton point; one edge per cover,
/// pointing downwards.
pub fn poset_dot<T: Scalar>(poset: &NewtonPoset<T>) -> String {
    let mut out = String::from("digraph bgmu {\n  rankdir=TB;\n  node [shape=box];\n");
    for (i, c) in poset.elements().iter().enumerate() {
        let _ = writeln!(out, "  b{i} [label=\"{}\\nkappa={}\"];", c.newton_point, c.kottwitz_point);
    }
    let mut edges = poset.hasse().to_vec();
    edges.sort_unstable();
    for (hi, lo) in edges {
        let _ = writeln!(out, "  b{hi} -> b{lo};");
    }
    out.push_str("}\n");
    out
}

pub const STRATA_COLUMNS: [&str; 7] = ["nu", "kappa", "defect", "dim", "codim", "dim_central", "dim_rz"];

pub fn strata_tsv<T: Scalar>(report: &StrataReport<T>) -> String {
    let mut out = STRATA_COLUMNS.join("\t");
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            compact(&r.newton_point),
            r.kottwitz_point,
            r.defect,
            r.dim_stratum,
            r.codim,
            r.dim_central_leaf,
            r.dim_rz
        );
    }
    out
}

pub fn strata_value<T: Scalar>(report: &StrataReport<T>) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "nu": r.newton_point.to_strings(),
                "kappa": r.kottwitz_point.to_string(),
                "defect": r.defect,
                "dim": r.dim_stratum,
                "codim": r.codim,
                "dim_central": r.dim_central_leaf,
                "dim_rz": r.dim_rz,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA_VERSION,
        "group": report.group,
        "mu": report.mu.to_strings(),
        "dim_deformation_space": report.dim_deformation_space,
        "defect_mode": report.defect_mode,
        "rows": rows,
    })
}

pub fn strata_json<T: Scalar>(report: &StrataReport<T>) -> String {
    pretty(&strata_value(report))
}

fn roots_of(ld_roots: &[Vec<i64>], set: &[usize]) -> Vec<Vec<i64>> {
    set.iter().map(|&i| ld_roots[i].clone()).collect()
}

pub fn root_sets_value<T: Scalar>(ld: &LeafDatum<T>, sets: &RootSets) -> Value {
    let roots = ld.datum().roots();
    json!({
        "schema": SCHEMA_VERSION,
        "group": ld.datum().name().unwrap_or(""),
        "mu_prime": ld.mu_prime().to_strings(),
        "w": ld.w().word.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "nu": ld.nu().to_strings(),
        "order": ld.order(),
        "r_mu": roots_of(roots, &sets.r_mu),
        "r_nu": roots_of(roots, &sets.r_nu),
        "r_mu_nu": roots_of(roots, &sets.r_mu_nu),
        "r_c": roots_of(roots, &sets.r_c),
        "r_c_size": sets.r_c.len(),
    })
}

pub fn root_sets_json<T: Scalar>(ld: &LeafDatum<T>, sets: &RootSets) -> String {
    pretty(&root_sets_value(ld, sets))
}

/// `set<TAB>root` lines, root coordinates comma-separated.
pub fn root_sets_tsv<T: Scalar>(ld: &LeafDatum<T>, sets: &RootSets) -> String {
    let roots = ld.datum().roots();
    let mut out = String::from("set\troot\n");
    for (name, set) in [("r_mu", &sets.r_mu), ("r_nu", &sets.r_nu), ("r_mu_nu", &sets.r_mu_nu), ("r_c", &sets.r_c)] {
        for &i in set.iter() {
            let coords: Vec<String> = roots[i].iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{name}\t{}", coords.join(","));
        }
    }
    out
}

/// Descending slopes separated by single spaces.
pub fn slopes_text<T: Scalar>(slopes: &[T]) -> String {
    let parts: Vec<String> = slopes.iter().map(|x| x.to_string()).collect();
    parts.join(" ") + "\n"
}
