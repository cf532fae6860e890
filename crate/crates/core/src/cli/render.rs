//! Human-readable renderings. JSON carries the full certificates; the text
//! forms are summaries meant for a terminal.

use std::fmt::Write;

use crate::analysis::{
    ClassificationReport, ConditionStatus, Cy2Report, SyzygyConditionVerdict, Verdict, VerdictStatus, Witness,
};
use crate::modules::{DimensionVector, KoszulStatus, KoszulVerdict};
use crate::oracle::Coverage;

use super::{ExtReport, HilbertReport, InputDocument, KoszulReport, OracleReport};

/// `1 + 2t + t^2`, with a trailing `+ O(t^n)` when the series was cut off.
pub fn series(coeffs: &[u64], truncated: bool) -> String {
    let mut terms = Vec::new();
    for (n, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && n > 0 { String::new() } else { c.to_string() };
        terms.push(match n {
            0 => coef,
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{n}"),
        });
    }
    if terms.is_empty() {
        terms.push("0".into());
    }
    let mut s = terms.join(" + ");
    if truncated {
        let _ = write!(s, " + O(t^{})", coeffs.len());
    }
    s
}

fn witness(w: &Witness) -> String {
    match w {
        Witness::ZeroProduct { left, right, degrees } => {
            format!("{left}·{right} = 0 (degrees {}, {})", degrees.0, degrees.1)
        }
        Witness::NonKoszulKernel(s) => format!(
            "kernel of a map F^{}(S_{}) -> S_{} is not Koszul (generated in degrees {:?})",
            s.step, s.source_simple, s.target_simple, s.kernel_generator_degrees
        ),
        Witness::MissingPath { from, to } => format!("no path from {from} to {to}"),
        Witness::OrthogonalIdempotents { first, second } => format!("e_{first} e_{second} = 0"),
        Witness::Component { index } => format!("component {index}"),
    }
}

fn verdict(v: &Verdict) -> String {
    let mut s = v.label();
    if let Some(w) = &v.witness {
        let _ = write!(s, "  [{}]", witness(w));
    } else if v.status == VerdictStatus::Undetermined {
        if let Some(r) = &v.reason {
            let _ = write!(s, "  ({r})");
        }
    }
    s
}

fn koszul_line(vs: &[KoszulVerdict]) -> String {
    if vs.iter().any(|v| v.status == KoszulStatus::NotKoszul) {
        "not Koszul".into()
    } else if vs.iter().all(|v| v.status == KoszulStatus::KoszulUpTo) {
        format!("Koszul through step {}", vs.iter().map(|v| v.up_to).min().unwrap_or(0))
    } else {
        "undetermined".into()
    }
}

pub fn syzygy_condition(v: &SyzygyConditionVerdict) -> String {
    let method = serde_json::to_value(v.method).expect("serializes");
    let method = method.as_str().unwrap_or("?");
    let mut s = match v.status {
        ConditionStatus::HoldsUpToBound => format!("syzygy condition: holds ({})", v.qualifier()),
        ConditionStatus::Fails => "syzygy condition: fails".to_string(),
        ConditionStatus::Undetermined => "syzygy condition: undetermined".to_string(),
    };
    let _ = write!(s, "  [method {method}, {} maps over {}]", v.maps_checked, v.field);
    if let Some(w) = &v.witness {
        let _ = write!(
            s,
            "\n  witness: F^{}(S_{}) -> S_{}, coefficients [{}], kernel fails at step {}",
            w.step,
            w.source_simple,
            w.target_simple,
            w.coefficients.join(", "),
            w.kernel_failure_step
        );
    }
    for n in &v.notes {
        let _ = write!(s, "\n  note: {n}");
    }
    s.push('\n');
    s
}

pub fn classification(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "algebra over {}: {} vertices, {} arrows, {} relations (degrees <= {})",
        r.input.field,
        r.input.vertices.len(),
        r.input.arrows.len(),
        r.input.relations.len(),
        r.max_degree
    );
    let _ = writeln!(s, "piecewise domain: {}", verdict(&r.piecewise_domain));
    let _ = writeln!(s, "prime: {}", verdict(&r.prime));
    let _ = writeln!(s, "domain: {}", verdict(&r.domain));
    let _ = writeln!(
        s,
        "koszul: A {}, A! {}, Hilbert identity {}",
        koszul_line(&r.koszul.algebra),
        koszul_line(&r.koszul.dual),
        if r.koszul.hilbert_identity { "holds" } else { "fails" }
    );
    let f = &r.frobenius;
    let _ = writeln!(
        s,
        "frobenius (A!): {}",
        match (f.is_frobenius(), f.top_degree) {
            (true, Some(d)) => format!("yes, top degree {d}, socle permutation {:?}", f.socle_permutation.as_ref().unwrap()),
            (false, Some(d)) if !f.socle_concentrated => format!("no, socle not concentrated in degree {d}"),
            (false, Some(_)) => "no".to_string(),
            (_, None) => "A! is infinite in the window".to_string(),
        }
    );
    s.push_str(&syzygy_condition(&r.syzygy_condition));
    if let Some(o) = &r.oracle_cross_check {
        let _ = writeln!(
            s,
            "oracle ({}): {}{}",
            o.field,
            zero_divisor_line(&o.report),
            if o.consistent { "" } else { "  INCONSISTENT" }
        );
    }
    s
}

pub fn cy2(r: &Cy2Report) -> String {
    let mut s = classification(&r.classification);
    let _ = writeln!(s, "cy2: {}", r.guarantee);
    match (r.incidence_screen.passed, &r.incidence_screen.permutation) {
        (Some(true), Some(p)) => {
            let _ = writeln!(s, "incidence screen: passed, permutation {p:?}");
        }
        (Some(_), _) => {
            let _ = writeln!(s, "incidence screen: failed");
        }
        (None, _) => {
            let _ = writeln!(
                s,
                "incidence screen: not decided ({})",
                r.incidence_screen.error.as_deref().unwrap_or("")
            );
        }
    }
    let n = r.components.len();
    if n == 1 {
        let label = if r.prime.is_yes() && r.semiprime_piecewise_domain.is_yes() {
            format!("prime piecewise domain: {}", verdict(&r.prime))
        } else {
            format!("piecewise domain: {}", verdict(&r.semiprime_piecewise_domain))
        };
        let _ = writeln!(s, "{label}");
    } else if r.semiprime_piecewise_domain.is_yes() {
        let _ = writeln!(
            s,
            "semiprime, not prime; components: {n} ({} prime piecewise domains)",
            r.prime_components
        );
    } else {
        let _ = writeln!(
            s,
            "semiprime piecewise domain: {}; components: {n}",
            verdict(&r.semiprime_piecewise_domain)
        );
    }
    for (k, c) in r.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "  component {k} {:?}: piecewise domain {}, prime {}",
            c.vertices,
            c.piecewise_domain.label(),
            c.prime.label()
        );
    }
    s
}

pub fn presentation(d: &InputDocument) -> String {
    let mut s = String::new();
    let field = match d.field {
        super::FieldDoc::Q => "Q".to_string(),
        super::FieldDoc::Prime { p } => format!("F{p}"),
    };
    let _ = writeln!(s, "field: {field}");
    let _ = writeln!(s, "vertices: {}", d.quiver.vertices.join(", "));
    for a in &d.quiver.arrows {
        let _ = writeln!(s, "arrow {}: {} -> {}", a.name, a.src, a.tgt);
    }
    for r in &d.relations {
        let mut line = String::new();
        for (k, t) in r.iter().enumerate() {
            let (neg, mag) = match t.coeff.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, t.coeff.as_str()),
            };
            match (k, neg) {
                (0, true) => line.push('-'),
                (0, false) => {}
                (_, true) => line.push_str(" - "),
                (_, false) => line.push_str(" + "),
            }
            if mag != "1" {
                let _ = write!(line, "{mag} ");
            }
            line.push_str(&t.path.concat());
        }
        let _ = writeln!(s, "relation: {line}");
    }
    s
}

pub fn hilbert(r: &HilbertReport) -> String {
    let mut s = String::new();
    let truncated = r.graded_length.is_none();
    for (v, row) in r.vertices.iter().zip(&r.series) {
        // trailing zeros carry no information for finite algebras
        let row = if truncated {
            &row[..]
        } else {
            &row[..r.graded_length.unwrap().min(row.len())]
        };
        let _ = writeln!(s, "h_{v}(t) = {}", series(row, truncated));
    }
    s
}

fn grid_rows(g: &[Vec<u64>]) -> Vec<String> {
    g.iter()
        .map(|row| row.iter().map(|x| format!("{x:>3}")).collect::<String>())
        .collect()
}

pub fn ext(r: &ExtReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "corner dimensions, rows = target, columns = source:  A | Ext(A!)");
    for n in 0..=r.through {
        let _ = writeln!(s, "degree {n}:");
        let a = r.algebra.grids.get(n).map(|g| grid_rows(g)).unwrap_or_default();
        let e = r.ext.grids.get(n).map(|g| grid_rows(g)).unwrap_or_default();
        for (x, y) in a.iter().zip(&e) {
            let mark = if x == y { "" } else { "   <- differs" };
            let _ = writeln!(s, "  {x}  |{y}{mark}");
        }
    }
    let _ = writeln!(s, "{}", if r.equal { "grids agree" } else { "grids DIFFER" });
    s
}

fn dims(d: &DimensionVector) -> String {
    if d.dims.is_empty() {
        return "0".into();
    }
    d.dims
        .iter()
        .map(|(n, row)| format!("{n}:{row:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn koszul(r: &KoszulReport) -> String {
    let mut s = String::new();
    for (v, k) in r.vertices.iter().zip(&r.simples) {
        let status = match k.status {
            KoszulStatus::KoszulUpTo => format!("Koszul through step {}", k.up_to),
            KoszulStatus::NotKoszul => format!(
                "NOT Koszul: step {} generated in degrees {:?}",
                k.failure_step.unwrap_or(0),
                k.failure_generator_degrees
            ),
            KoszulStatus::Undetermined => {
                format!("undetermined: window exhausted at step {}", k.exhausted_at.unwrap_or(0))
            }
        };
        let _ = writeln!(s, "S_{v}: {status}");
        for (n, d) in k.dims.iter().enumerate() {
            let _ = writeln!(s, "  F^{n}: {}", dims(d));
        }
    }
    s
}

fn zero_divisor_line(z: &crate::oracle::ZeroDivisorReport) -> String {
    match (&z.witness, z.coverage) {
        (Some(w), _) => format!(
            "witness at degrees ({}, {}): [{}] * [{}] = 0",
            w.degrees.0,
            w.degrees.1,
            w.left.join(", "),
            w.right.join(", ")
        ),
        (None, Coverage::Full) => format!("none (full coverage ≤ degree {})", z.max_total_degree),
        (None, Coverage::Partial) => format!(
            "none found (partial coverage ≤ degree {}, {} blocks skipped)",
            z.max_total_degree,
            z.skipped.len()
        ),
    }
}

pub fn oracle(r: &OracleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "zero divisors over {}: {}", r.zero_divisors.field, zero_divisor_line(&r.zero_divisors));
    let _ = writeln!(
        s,
        "corners within degree {}: {}",
        r.primeness.window,
        if r.primeness.prime_by_corners { "all nonzero" } else { "some vanish" }
    );
    if let Some(n) = &r.note {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::series;

    #[test]
    fn series_formatting() {
        assert_eq!(series(&[1, 2, 1], false), "1 + 2t + t^2");
        assert_eq!(series(&[1, 3, 0, 4], true), "1 + 3t + 4t^3 + O(t^4)");
        assert_eq!(series(&[0], false), "0");
    }
}
