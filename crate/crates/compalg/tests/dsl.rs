use compalg::assignment_file::AssignmentData;
use compalg::dsl::{parse, parse_with, DiagnosticKind, Span, Workspace};
use proptest::prelude::*;

const FIXTURE: &str = include_str!("fixtures/workspace.cmp");
const COIN: &str = include_str!("fixtures/coin.json");

fn load(src: &str) -> Result<Workspace, compalg::dsl::Diagnostic> {
    parse_with(src, &mut |name| {
        if name == "coin.json" {
            Ok(COIN.to_string())
        } else {
            Err("no such file".into())
        }
    })
}

fn err(src: &str) -> (DiagnosticKind, String, Span) {
    let d = load(src).unwrap_err();
    (d.kind, d.message, d.span)
}

const FIVE: &str = "
elements G3 = {m, m', m''}
measurement alpha over G3 = {{m}, {m'}, {m''}}
measurement beta over G3 = {{m, m'}, {m''}}
measurement gamma over G3 = {{m}, {m', m''}}
measurement delta over G3 = {{m, m''}, {m'}}
measurement cup over G3 = {{m, m', m''}}
";

#[test]
fn five_partitions() {
    let ws = parse(FIVE).unwrap();
    assert_eq!(ws.measurements.len(), 5);
    assert!(ws.measurements.values().all(|m| m.ground().len() == 3));
    let all = compalg_core::model::enumerate_partitions(&ws.ground_sets["G3"]).unwrap();
    for m in ws.measurements.values() {
        assert!(all.contains(m));
    }
}

#[test]
fn empty_document() {
    assert_eq!(parse("").unwrap(), Workspace::default());
    assert_eq!(parse("# only a comment\n\n").unwrap(), Workspace::default());
}

#[test]
fn fixture_contents() {
    let ws = load(FIXTURE).unwrap();
    assert_eq!(ws.ground_sets.len(), 4);
    assert_eq!(ws.measurements.len(), 8);
    assert_eq!(
        ws.sequences["repeat"].steps,
        ["alpha", "beta", "gamma", "alpha"]
    );
    assert_eq!(
        ws.paths["loop"].path.notation(),
        "[N{n1}, alpha{m'}, O{o1}, delta{m'}, N{n1}]"
    );
    assert!(matches!(ws.assignments["u"].data, AssignmentData::Exact(_)));
}

#[test]
fn semantic_errors() {
    let (kind, msg, span) = err("elements G = {a, b}\nmeasurement M over G = {{a}}");
    assert_eq!(kind, DiagnosticKind::Semantic);
    assert!(msg.contains("not a partition"), "{msg}");
    assert_eq!(span, Span::new(2, 24, 29));

    let (_, msg, span) = err("elements G = {a, b}\nmeasurement M over G = {{a, b}, {b}}");
    assert!(msg.contains("overlap"));
    assert_eq!(span, Span::new(2, 33, 36));

    let (_, msg, span) = err("measurement M over H = {{a}}");
    assert!(msg.contains("unknown ground set `H`"));
    assert_eq!(span, Span::new(1, 20, 21));

    let (_, msg, span) = err("elements G = {a, b}\nelements G = {c}");
    assert!(msg.contains("already declared"));
    assert_eq!(span, Span::new(2, 10, 11));

    let (_, msg, span) = err("elements G = {a, b, a}");
    assert!(msg.contains("twice"));
    assert_eq!(span, Span::new(1, 21, 22));

    let doc = format!("{FIVE}sequence s = [alpha, beta]");
    let (_, msg, span) = err(&doc);
    assert!(msg.contains("atomic"), "{msg}");
    assert_eq!(span, Span::new(8, 22, 26));

    let doc =
        format!("{FIVE}sequence s = [alpha, beta, alpha]\npath p over s = [{{m}}, {{m}}, {{m}}]");
    let (_, msg, span) = err(&doc);
    assert!(msg.contains("not a block of measurement `beta`"), "{msg}");
    assert_eq!(span, Span::new(9, 23, 26));

    let doc = format!("{FIVE}sequence s = [alpha, alpha]\npath p over s = [{{m}}]");
    assert!(err(&doc).1.contains("2 steps"));
    let doc = format!("{FIVE}sequence s = [alpha, ghost]");
    assert_eq!(err(&doc).2, Span::new(8, 22, 27));
    let doc =
        format!("{FIVE}sequence s = [alpha, alpha]\nassignment a over s algebra Q from \"x.json\"");
    assert!(err(&doc).1.contains("unknown algebra"));
    let doc =
        format!("{FIVE}sequence s = [alpha, alpha]\nassignment a over s algebra O from \"x.json\"");
    assert!(err(&doc).1.contains("not associative"));
    let doc =
        format!("{FIVE}sequence s = [alpha, alpha]\nassignment a over s algebra C from \"x.json\"");
    let (_, msg, span) = err(&doc);
    assert!(msg.contains("cannot read `x.json`"));
    assert_eq!(span, Span::new(9, 36, 44));
}

#[test]
fn parse_errors() {
    let (kind, msg, span) = err("elements G {a}");
    assert_eq!(kind, DiagnosticKind::Parse);
    assert!(msg.contains("expected `=`"));
    assert_eq!(span, Span::new(1, 12, 13));
    let (_, msg, span) = err("elements G = {a,");
    assert!(msg.contains("end of input"));
    assert_eq!(span, Span::new(1, 16, 17));
    let (_, msg, _) = err("element G = {a}");
    assert!(msg.contains("found `element`"));
    assert_eq!(err("elements G = {a} ;").2, Span::new(1, 18, 19));
}

#[test]
fn assignment_mode_and_errors() {
    let doc = FIXTURE.replace("\"coin.json\"", "\"float.json\"");
    let float = COIN.replace("\"1/2\", \"1/2\"", "0.5, 0.5");
    let ws = parse_with(&doc, &mut |_| Ok(float.clone())).unwrap();
    assert!(matches!(ws.assignments["u"].data, AssignmentData::Float(_)));
    let wrong = COIN.replace("\"C\"", "\"H\"");
    let d = parse_with(FIXTURE, &mut |_| Ok(wrong.clone())).unwrap_err();
    assert!(d.message.contains("declares algebra H"), "{}", d.message);
}

#[test]
fn canonical_round_trip() {
    let ws = load(FIXTURE).unwrap();
    let text = ws.to_dsl();
    let again = load(&text).unwrap();
    assert_eq!(again, ws);
    assert_eq!(again.to_dsl(), text);
    assert!(text.contains("measurement beta over G3 = {{m, m'}, {m''}}\n"));
    assert!(text.contains("assignment u over coin algebra C from \"coin.json\"\n"));
}

/// Random well-formed document over small ground sets.
fn document() -> impl Strategy<Value = String> {
    let ground = prop::collection::btree_set("[a-z][a-z0-9']{0,2}", 1..5);
    let choices = prop::collection::vec(any::<prop::sample::Index>(), 64);
    (prop::collection::vec(ground, 1..3), choices).prop_map(|(grounds, choices)| {
        let mut choices = choices.into_iter().cycle();
        let mut next = move |n: usize| choices.next().unwrap().index(n);
        let mut doc = String::new();
        let mut measurements: Vec<(String, Vec<Vec<String>>)> = Vec::new();
        for (gi, elems) in grounds.iter().enumerate() {
            let elems: Vec<_> = elems.iter().cloned().collect();
            doc += &format!("elements G{gi} = {{{}}}\n", elems.join(", "));
            let atomic: Vec<Vec<String>> = elems.iter().map(|e| vec![e.clone()]).collect();
            for k in 0..3 {
                let blocks = if k == 0 {
                    atomic.clone()
                } else {
                    let mut bs: Vec<Vec<String>> = Vec::new();
                    for e in &elems {
                        let b = next(bs.len() + 1);
                        if b == bs.len() {
                            bs.push(vec![e.clone()]);
                        } else {
                            bs[b].push(e.clone());
                        }
                    }
                    bs
                };
                let name = format!("M{gi}x{k}");
                let body: Vec<_> = blocks
                    .iter()
                    .map(|b| format!("{{{}}}", b.join(", ")))
                    .collect();
                doc += &format!("measurement {name} over G{gi} = {{{}}}\n", body.join(", "));
                measurements.push((name, blocks));
            }
        }
        let atomic: Vec<_> = measurements
            .iter()
            .filter(|(n, _)| n.ends_with("x0"))
            .collect();
        for si in 0..2 {
            let len = 2 + next(3);
            let mut steps = vec![atomic[next(atomic.len())]];
            for _ in 1..len - 1 {
                steps.push(&measurements[next(measurements.len())]);
            }
            steps.push(atomic[next(atomic.len())]);
            let names: Vec<_> = steps.iter().map(|(n, _)| n.as_str()).collect();
            doc += &format!("sequence s{si} = [{}]\n", names.join(", "));
            let results: Vec<_> = steps
                .iter()
                .map(|(_, bs)| format!("{{{}}}", bs[next(bs.len())].join(", ")))
                .collect();
            doc += &format!("path p{si} over s{si} = [{}]\n", results.join(", "));
        }
        doc
    })
}

proptest! {
    #[test]
    fn printed_workspaces_reparse_identically(doc in document()) {
        let ws = parse(&doc).unwrap();
        let text = ws.to_dsl();
        let again = parse(&text).unwrap();
        prop_assert_eq!(&again, &ws);
        prop_assert_eq!(again.to_dsl(), text);
    }

    #[test]
    fn diagnostics_point_into_the_document(cut in 0usize..2000, len in 1usize..6, junk in prop::sample::select(vec!["", "}", "{", ",", "=", "x", "\"", "[", "over"])) {
        let chars: Vec<char> = FIXTURE.chars().collect();
        let at = cut % chars.len();
        let end = (at + len).min(chars.len());
        let doc: String = chars[..at].iter().chain(junk.chars().collect::<Vec<_>>().iter()).chain(&chars[end..]).collect();
        if let Err(d) = load(&doc) {
            let lines: Vec<&str> = doc.lines().collect();
            prop_assert!(d.span.line >= 1 && d.span.line <= lines.len(), "{d}");
            let width = lines[d.span.line - 1].chars().count();
            prop_assert!(d.span.col_start >= 1 && d.span.col_start < d.span.col_end && d.span.col_end <= width + 1, "{d}");
        }
    }
}
