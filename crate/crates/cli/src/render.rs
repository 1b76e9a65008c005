//! Text and JSON renderings of tables and reports.

use std::fmt::Write as _;

use serde_json::{json, Value};
use srtool_core::{BettiTable, ConjectureReport, InvariantBundle};

/// Aligned table with one column per homological degree `i` and one row per
/// strand `j - i`, followed by machine rows `i j beta`.
pub fn betti_text(t: &BettiTable) -> String {
    let mut s = String::new();
    let rows: Vec<(usize, usize, u64)> = t.rows().collect();
    let pdim = rows.iter().map(|r| r.0).max().unwrap_or(0);
    let reg = rows.iter().map(|r| r.1 - r.0).max().unwrap_or(0);
    let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
    let width = rows
        .iter()
        .map(|r| r.2.to_string().len())
        .chain((0..=pdim).map(|i| t.total(i).to_string().len()))
        .max()
        .unwrap_or(1)
        .max(pdim.to_string().len());
    let label_width = "total:".len().max(reg.to_string().len() + 1);

    writeln!(s, "field: {}", t.field()).unwrap();
    if !t.is_complete() {
        writeln!(s, "truncated: internal degrees j <= {} of {}", t.cap(), t.n()).unwrap();
    }
    write!(s, "{:>label_width$}", "").unwrap();
    for i in 0..=pdim {
        write!(s, " {i:>width$}").unwrap();
    }
    s.push('\n');
    write!(s, "{:>label_width$}", "total:").unwrap();
    for i in 0..=pdim {
        write!(s, " {:>width$}", t.total(i)).unwrap();
    }
    s.push('\n');
    for strand in 0..=reg {
        write!(s, "{:>label_width$}", format!("{strand}:")).unwrap();
        for i in 0..=pdim {
            write!(s, " {:>width$}", cell(t.get(i, i + strand))).unwrap();
        }
        s.push('\n');
    }
    s.push_str("\n# i j beta\n");
    for (i, j, b) in rows {
        writeln!(s, "{i} {j} {b}").unwrap();
    }
    s
}

pub fn betti_json(t: &BettiTable) -> Value {
    let rows: Vec<Value> = t.rows().map(|(i, j, b)| json!([i, j, b])).collect();
    json!({
        "field": t.field().to_string(),
        "n": t.n(),
        "cap": t.cap(),
        "complete": t.is_complete(),
        "rows": rows,
    })
}

pub fn invariants_text(b: &InvariantBundle) -> String {
    let golod = match b.is_golod {
        Some(g) => g.to_string(),
        None => "n/a (not flag)".to_string(),
    };
    format!(
        "field: {}\nkrull_dim: {}\ndepth: {}\npdim: {}\nreg: {}\nheight: {}\nmultiplicity: {}\n\
         cohen_macaulay: {}\nkoszul_flag: {}\ngolod_criterion: {}\n",
        b.field,
        b.krull_dim,
        b.depth,
        b.pdim,
        b.reg,
        b.height,
        b.multiplicity,
        b.is_cohen_macaulay,
        b.is_koszul_flag,
        golod
    )
}

pub fn invariants_json(b: &InvariantBundle) -> Value {
    json!({
        "field": b.field.to_string(),
        "krull_dim": b.krull_dim,
        "depth": b.depth,
        "pdim": b.pdim,
        "reg": b.reg,
        "height": b.height,
        "multiplicity": b.multiplicity,
        "is_cohen_macaulay": b.is_cohen_macaulay,
        "is_koszul_flag": b.is_koszul_flag,
        "is_golod": b.is_golod,
    })
}

fn shifts(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a (not Cohen-Macaulay)".to_string(), T::to_string)
}

pub fn conjecture_text(r: &ConjectureReport) -> String {
    let p = &r.shift_profile;
    let (mins, maxs) = p.prefix();
    let mut s = String::new();
    writeln!(s, "subject: {}", r.subject).unwrap();
    writeln!(s, "subdivided: {}", r.subdivided).unwrap();
    writeln!(s, "field: {}", r.field).unwrap();
    writeln!(s, "multiplicity: {}", r.multiplicity).unwrap();
    writeln!(s, "height: {}", r.height).unwrap();
    writeln!(s, "min shifts m_1..m_h: {}", shifts(mins)).unwrap();
    writeln!(s, "max shifts M_1..M_h: {}", shifts(maxs)).unwrap();
    writeln!(s, "upper product: {}", r.upper_product).unwrap();
    writeln!(s, "upper bound holds: {}", r.upper_holds).unwrap();
    writeln!(s, "upper equality: {}", r.equality_upper).unwrap();
    writeln!(s, "cohen_macaulay: {}", r.is_cohen_macaulay).unwrap();
    writeln!(s, "lower product: {}", opt(&r.lower_product)).unwrap();
    writeln!(s, "lower bound holds: {}", opt(&r.lower_holds)).unwrap();
    writeln!(s, "lower equality: {}", opt(&r.equality_lower)).unwrap();
    writeln!(s, "pure: {}", r.is_pure).unwrap();
    for (tag, w) in [("m_h", &r.min_witness), ("M_h", &r.max_witness)] {
        if let Some(w) = w {
            writeln!(s, "witness for {tag}: beta_{{{},{}}} via W = {{{}}}", w.i, w.j, w.subset.join(",")).unwrap();
        }
    }
    s
}

pub fn conjecture_json(r: &ConjectureReport) -> Value {
    let witness = |w: &Option<srtool_core::conjecture::Witness>| {
        w.as_ref().map(|w| json!({ "i": w.i, "j": w.j, "subset": w.subset }))
    };
    json!({
        "subject": r.subject,
        "subdivided": r.subdivided,
        "field": r.field.to_string(),
        "multiplicity": r.multiplicity,
        "height": r.height,
        "shift_profile": r.shift_profile,
        "upper_product": r.upper_product.to_string(),
        "upper_holds": r.upper_holds,
        "equality_upper": r.equality_upper,
        "is_cohen_macaulay": r.is_cohen_macaulay,
        "lower_product": r.lower_product.as_ref().map(ToString::to_string),
        "lower_holds": r.lower_holds,
        "equality_lower": r.equality_lower,
        "is_pure": r.is_pure,
        "min_witness": witness(&r.min_witness),
        "max_witness": witness(&r.max_witness),
        "betti": betti_json(&r.table),
    })
}
