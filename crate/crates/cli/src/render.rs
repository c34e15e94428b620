//! Plain-text rendering of reports.

use std::fmt::Write;

use curvlab::verify::{MetricReport, PlaneProfile, Reproduction, Verdict};
use serde_json::Value;

fn profile_line(p: &PlaneProfile) -> String {
    let what = if p.squared { "R(pi)^2" } else { "Theta(pi)" };
    format!(
        "power ranks {:?}; {what} charpoly {}",
        p.power_ranks, p.operator.charpoly
    )
}

pub fn verdict(v: &Verdict) -> String {
    let mut out = String::new();
    let status = if v.holds { "HOLDS" } else { "FAILS" };
    writeln!(out, "{}: {status}", v.property).unwrap();
    writeln!(
        out,
        "  {} random planes + {} battery planes, seed {}, {} distinct profile(s)",
        v.samples, v.battery, v.seed, v.distinct_profiles
    )
    .unwrap();
    writeln!(out, "  reference: {}", profile_line(&v.reference_profile)).unwrap();
    for (i, w) in v.witnesses.iter().enumerate() {
        let label = w.label.as_deref().unwrap_or("random plane");
        writeln!(out, "  witness {} ({label}): {}", i + 1, w.frame).unwrap();
        writeln!(out, "    {}", profile_line(&w.profile)).unwrap();
    }
    for n in &v.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    out
}

pub fn metric_report(r: &MetricReport) -> String {
    let mut out = String::new();
    let status = if r.holds { "HOLDS" } else { "FAILS" };
    writeln!(out, "{}: {status} at {} point(s)", r.property, r.points.len()).unwrap();
    for p in &r.points {
        let coords: Vec<String> = p.point.iter().map(ToString::to_string).collect();
        writeln!(out, "point ({})", coords.join(", ")).unwrap();
        match (&p.verdict, &p.note) {
            (Some(v), _) => {
                for line in verdict(v).lines() {
                    writeln!(out, "  {line}").unwrap();
                }
            }
            (None, Some(n)) => writeln!(out, "  {n}").unwrap(),
            (None, None) => {}
        }
    }
    writeln!(out, "profiles constant across points: {}", r.cross_point_constant).unwrap();
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    out
}

fn value_lines(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object()
                    || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object())))
                {
                    writeln!(out, "{pad}{k}:").unwrap();
                    value_lines(x, indent + 2, out);
                } else {
                    writeln!(out, "{pad}{k}: {x}").unwrap();
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                writeln!(out, "{pad}[{i}]").unwrap();
                value_lines(x, indent + 2, out);
            }
        }
        other => writeln!(out, "{pad}{other}").unwrap(),
    }
}

pub fn reproduction(r: &Reproduction) -> String {
    let mut out = String::new();
    let status = if r.holds { "REPRODUCED" } else { "NOT REPRODUCED" };
    writeln!(out, "{}: {status}", r.name).unwrap();
    value_lines(&r.report, 2, &mut out);
    out
}
