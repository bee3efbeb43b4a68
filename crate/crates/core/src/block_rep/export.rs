use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use super::BlockRep;
use crate::arith::Rational;
use crate::galilei::BasisElement;

/// `{"m": …, "socle": […], "generators": {"e": matrix, …, "z": matrix}}`.
pub fn block_rep_json(rep: &BlockRep) -> Value {
    let mut generators = Map::new();
    for (b, mat) in rep.matrices() {
        generators.insert(b.to_string(), serde_json::to_value(mat).expect("matrix serializes"));
    }
    json!({
        "m": rep.spec().m(),
        "socle": rep.socle(),
        "generators": generators,
    })
}

fn linear_form(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (c, var) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let magnitude = c.abs();
        let coef = if magnitude.is_one() { String::new() } else { magnitude.to_string() };
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&coef);
        out.push_str(var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The radical image `R(Σ a_i v_i + c·z)` as a Markdown table, one column per
/// basis vector, with `‖` marking block boundaries. Diagonal blocks carry the
/// label of the socle factor.
pub fn block_rep_markdown(rep: &BlockRep) -> String {
    let spec = rep.spec();
    let labels = rep.socle().labels();
    let radical: Vec<(BasisElement, String)> = spec
        .radical_basis()
        .into_iter()
        .map(|b| {
            let var = match b {
                BasisElement::V(i) => format!("a{i}"),
                _ => "c".to_string(),
            };
            (b, var)
        })
        .collect();

    let mut header = vec![String::new()];
    for (t, l) in labels.iter().enumerate() {
        if t > 0 {
            header.push("‖".into());
        }
        header.extend((0..l.dim()).map(|k| format!("{l}:{k}")));
    }

    let mut lines = vec![
        format!("R(Σ a_i v_i + c z), socle {}\n", rep.socle()),
        format!("| {} |", header.join(" | ")),
        format!("|{}", "---|".repeat(header.len())),
    ];
    for (s, ls) in labels.iter().enumerate() {
        for row in 0..ls.dim() {
            let mut cells = vec![format!("{ls}:{row}")];
            for (t, lt) in labels.iter().enumerate() {
                if t > 0 {
                    cells.push("‖".into());
                }
                for col in 0..lt.dim() {
                    let cell = if s == t {
                        if row == 0 && col == 0 {
                            format!("R_{}(s)", lt.0)
                        } else {
                            String::new()
                        }
                    } else {
                        let terms: Vec<(Rational, String)> = radical
                            .iter()
                            .map(|(b, var)| (rep.block(*b, s, t)[(row, col)].clone(), var.clone()))
                            .collect();
                        if s > t {
                            String::new()
                        } else {
                            linear_form(&terms)
                        }
                    };
                    cells.push(cell);
                }
            }
            lines.push(format!("| {} |", cells.join(" | ")));
        }
    }
    lines.join("\n") + "\n"
}
