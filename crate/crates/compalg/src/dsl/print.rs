use std::fmt::Write;

use compalg_core::model::{ElementSet, GroundSet};

use super::Workspace;

fn set(g: &GroundSet, s: ElementSet) -> String {
    format!("{{{}}}", g.names_of(s).join(", "))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn print(ws: &Workspace) -> String {
    let mut out = String::new();
    for (name, g) in &ws.ground_sets {
        writeln!(out, "elements {name} = {}", set(g, g.all())).unwrap();
    }
    for (name, m) in &ws.measurements {
        let blocks: Vec<_> = m.blocks().iter().map(|b| set(m.ground(), *b)).collect();
        writeln!(
            out,
            "measurement {name} over {} = {{{}}}",
            m.ground().name(),
            blocks.join(", ")
        )
        .unwrap();
    }
    for (name, s) in &ws.sequences {
        writeln!(out, "sequence {name} = [{}]", s.steps.join(", ")).unwrap();
    }
    for (name, p) in &ws.paths {
        let results: Vec<_> = p
            .path
            .steps()
            .iter()
            .zip(p.path.results())
            .map(|(m, r)| set(m.ground(), *r))
            .collect();
        writeln!(
            out,
            "path {name} over {} = [{}]",
            p.sequence,
            results.join(", ")
        )
        .unwrap();
    }
    for (name, a) in &ws.assignments {
        writeln!(
            out,
            "assignment {name} over {} algebra {} from {}",
            a.sequence,
            a.algebra.tag(),
            quote(&a.file)
        )
        .unwrap();
    }
    out
}
