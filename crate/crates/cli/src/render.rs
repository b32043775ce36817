//! Plain-text rendering of the report sections. JSON mode serializes
//! the same structures directly; this module only formats.

use crate::report::{PieceEntry, Report, Sections};
use gkz_core::cone::GkzMatrix;
use gkz_core::resonance::sres;
use num_bigint::BigInt;
use num_rational::BigRational;

fn tuple<S: AsRef<str>>(parts: &[S]) -> String {
    format!("({})", parts.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(", "))
}

fn set(cols: &[usize]) -> String {
    format!("{{{}}}", cols.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", "))
}

fn piece(p: &PieceEntry) -> String {
    let shift = tuple(&p.shift);
    if p.span_columns.is_empty() {
        shift
    } else {
        let dirs: Vec<String> = p.span_columns.iter().map(|j| format!("a{j}")).collect();
        format!("{shift} + span{{{}}}", dirs.join(", "))
    }
}

/// Renders the [-5, 5]^2 strong-resonance grid for two-row matrices;
/// one character per integer parameter.
pub fn sres_grid(g: &GkzMatrix) -> Vec<String> {
    assert_eq!(g.dim(), 2);
    let mut lines = Vec::new();
    lines.push(
        "strong-resonance grid over integer beta in [-5, 5]^2 ('*' = strongly resonant):"
            .to_string(),
    );
    for b2 in (-5..=5i64).rev() {
        let cells: Vec<String> = (-5..=5i64)
            .map(|b1| {
                let beta = vec![
                    BigRational::from(BigInt::from(b1)),
                    BigRational::from(BigInt::from(b2)),
                ];
                let hit = sres(g, &beta).iter().any(Option::is_some);
                format!("{:>2}", if hit { '*' } else { '.' })
            })
            .collect();
        lines.push(format!("  b2 = {b2:>2} |{}", cells.join(" ")));
    }
    lines.push(format!("           +{}", "-".repeat(32)));
    let labels: Vec<String> = (-5..=5i64).map(|b1| format!("{b1:>2}")).collect();
    lines.push(format!("      b1 =  {}", labels.join(" ")));
    lines
}

pub fn render_text(report: &Report, grid: Option<&[String]>) -> String {
    let mut out: Vec<String> = Vec::new();
    let rows = report.input.matrix.len();
    let cols = report.input.matrix.first().map_or(0, Vec::len);
    out.push(format!("matrix: {rows} x {cols}"));
    for row in &report.input.matrix {
        out.push(format!("  {}", row.join(" ")));
    }
    if let Some(beta) = &report.input.beta {
        out.push(format!("beta: {}", tuple(beta)));
    }
    out.push(format!("order: {}", report.input.order));

    let s: &Sections = &report.sections;
    if let Some(v) = &s.validate {
        out.push(String::new());
        out.push("[validate]".to_string());
        out.push(format!("rows: {}, columns: {}", v.rows, v.columns));
        out.push("full lattice: yes".to_string());
        out.push(format!(
            "pointed: yes (positive functional {})",
            tuple(&v.positive_functional)
        ));
    }
    if let Some(faces) = &s.faces {
        out.push(String::new());
        out.push("[faces]".to_string());
        for f in faces {
            out.push(format!(
                "dim {}: columns {} normal {}",
                f.dim,
                set(&f.columns),
                tuple(&f.normal)
            ));
        }
    }
    if let Some(t) = &s.toric_ideal {
        out.push(String::new());
        out.push("[toric-ideal]".to_string());
        out.push(format!("generators ({}):", t.order));
        for g in &t.generators {
            out.push(format!("  {g}"));
        }
    }
    if let Some(entries) = &s.qdeg {
        out.push(String::new());
        out.push("[qdeg]".to_string());
        for e in entries {
            out.push(format!("tau {}:", set(&e.tau)));
            if e.pieces.is_empty() {
                out.push("  (empty)".to_string());
            }
            for p in &e.pieces {
                out.push(format!("  {}", piece(p)));
            }
        }
    }
    if let Some(sr) = &s.sres {
        out.push(String::new());
        out.push("[sres]".to_string());
        for c in &sr.columns {
            match &c.witness {
                None => out.push(format!("j = {}: no witness", c.j)),
                Some(w) => out.push(format!(
                    "j = {}: witness k = {} on piece {}",
                    c.j,
                    w.k,
                    piece(&w.piece)
                )),
            }
        }
        out.push(format!(
            "strongly resonant: {}",
            if sr.strongly_resonant { "yes" } else { "no" }
        ));
        out.push(format!("verdict: {}", sr.verdict));
        if let Some(grid) = grid {
            out.push(String::new());
            out.extend(grid.iter().cloned());
        }
    }
    if let Some(r) = &s.res {
        out.push(String::new());
        out.push("[res]".to_string());
        match &r.face {
            Some(f) => out.push(format!("resonant: yes (via face {})", set(&f.columns))),
            None => out.push("resonant: no".to_string()),
        }
    }
    if let Some(entries) = &s.contiguity {
        out.push(String::new());
        out.push("[contiguity]".to_string());
        for e in entries {
            let tail = match (&e.cokernel_levels, &e.infinite_family) {
                (Some(levels), _) => format!("cokernel levels {{{}}}", levels.join(", ")),
                (None, Some(p)) => format!("infinite family on piece {}", piece(p)),
                (None, None) => unreachable!("one of the two outcomes is always present"),
            };
            out.push(format!(
                "j = {}: quasi-isomorphism: {}; {}",
                e.j,
                if e.quasi_isomorphism { "yes" } else { "no" },
                tail
            ));
        }
    }
    if let Some(sh) = &s.shift {
        out.push(String::new());
        out.push("[shift]".to_string());
        out.push(format!("full: {}", sh.full));
        for p in &sh.partial {
            match (&p.shift, &p.infinite_family) {
                (Some(k), _) => out.push(format!("tau {}: {}", set(&p.tau), k)),
                (None, Some(pc)) => out.push(format!(
                    "tau {}: infinite family on piece {}",
                    set(&p.tau),
                    piece(pc)
                )),
                (None, None) => unreachable!("one of the two outcomes is always present"),
            }
        }
    }
    if let Some(entries) = &s.border {
        out.push(String::new());
        out.push("[border]".to_string());
        for b in entries {
            out.push(format!(
                "face {} (closure {}): dim {}, index {}, divisors {}",
                set(&b.face),
                set(&b.closure_face),
                b.dim,
                b.index,
                tuple(&b.divisors)
            ));
            let basis: Vec<String> = b.basis.iter().map(|v| tuple(v)).collect();
            let comp: Vec<String> = b.complement_basis.iter().map(|v| tuple(v)).collect();
            out.push(format!(
                "  basis: {}; complement: {}",
                if basis.is_empty() { "-".to_string() } else { basis.join(", ") },
                if comp.is_empty() { "-".to_string() } else { comp.join(", ") },
            ));
            out.push(format!(
                "  beta' = {}, beta'' = {}, nonzero: {}",
                tuple(&b.beta_prime),
                tuple(&b.beta_second),
                if b.nonzero { "yes" } else { "no" }
            ));
            if !b.alpha.is_empty() {
                let alphas: Vec<String> = b.alpha.iter().map(|a| tuple(a)).collect();
                out.push(format!("  alpha: {}", alphas.join(", ")));
            }
            let mults: Vec<String> =
                b.multiplicities.iter().map(|(q, c)| format!("({q}, {c})")).collect();
            out.push(format!("  multiplicities: {}", mults.join(", ")));
            out.push(format!("  polynomial vars: {}", set(&b.polynomial_vars)));
        }
    }
    if let Some(e) = &s.export {
        out.push(String::new());
        out.push("[export]".to_string());
        out.push(format!("dialect: {}, payload: {}", e.dialect, e.payload));
        out.push(e.script.trim_end().to_string());
    }
    out.join("\n") + "\n"
}
