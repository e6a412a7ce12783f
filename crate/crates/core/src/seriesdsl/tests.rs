use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::expr::{BinOp, Expr, SeqFn};

#[test]
fn parses_sequence_call_over_power() {
    let e = parse_expression("C(n)/5^n").unwrap();
    let Expr::Binary(BinOp::Div, num, den) = &e else { panic!("expected a quotient, got {e:?}") };
    assert!(matches!(num.as_ref(), Expr::Seq(SeqFn::Catalan, _)));
    assert!(matches!(den.as_ref(), Expr::Binary(BinOp::Pow, _, _)));
}

#[test]
fn parses_alternating_term() {
    let e = parse_expression("(-1)^n * C(2*n)").unwrap();
    let Expr::Binary(BinOp::Mul, sign, _) = &e else { panic!("expected a product") };
    assert!(matches!(sign.as_ref(), Expr::Binary(BinOp::Pow, _, _)));
}

#[test]
fn unicode_minus_and_free_variables() {
    let e = parse_expression("2*(z+8)/(4−z)^2").unwrap();
    assert_eq!(e.free_vars(), BTreeSet::from(["z".to_string()]));
}

#[test]
fn syntax_error_reports_position_and_expected() {
    let err = parse_expression("C(n)/").unwrap_err();
    assert_eq!(err.line, 1);
    assert_eq!(err.column, 6);
    assert!(!err.expected.is_empty());
    let err = parse_expression("1 +\n  * 2").unwrap_err();
    assert_eq!((err.line, err.column), (2, 3));
}

const ONE: &str = r#"
[identity]
id = "t.one"
kind = "series"
paper = "test"
index = "n"  start = 0
term = "C(n)/5^n"
tail = "geometric ratio=9/10 from=1"
rhs = "-beta*sqrt5"
params = ""
as_printed = false
note = ""
"#;

#[test]
fn duplicate_id_names_both_locations() {
    let text = format!("{ONE}\n{ONE}");
    let parsed = parse_registry_named(&text, "dup.reg");
    assert_eq!(parsed.records.len(), 1);
    assert_eq!(parsed.diagnostics.len(), 1);
    let msg = parsed.diagnostics[0].to_string();
    assert!(msg.contains("dup.reg:2"), "{msg}");
    assert!(msg.contains("dup.reg:15"), "{msg}");
}

#[test]
fn duplicate_across_merged_sources() {
    let mut a = parse_registry_named(ONE, "a.reg");
    a.merge(parse_registry_named(ONE, "b.reg"));
    let msg = a.diagnostics[0].to_string();
    assert!(msg.contains("a.reg:2") && msg.contains("b.reg:2"), "{msg}");
}

#[test]
fn series_without_tail_is_rejected() {
    let text = ONE.replace("tail = \"geometric ratio=9/10 from=1\"\n", "");
    let parsed = parse_registry(&text);
    assert!(parsed.records.is_empty());
    assert!(parsed.diagnostics.iter().any(|d| d.message.contains("tail")));
}

#[test]
fn undeclared_variable_is_rejected() {
    let text = ONE.replace("C(n)/5^n", "C(n)/5^(n+s)");
    let parsed = parse_registry(&text);
    assert!(parsed.diagnostics.iter().any(|d| d.message.contains("undeclared variable `s`")));
    let ok = text.replace("params = \"\"", "params = \"s=0..3\"");
    assert!(parse_registry(&ok).is_ok());
}

#[test]
fn malformed_record_does_not_abort_the_rest() {
    let bad = ONE.replace("t.one", "t.bad").replace("C(n)/5^n", "C(n)/");
    let good = ONE.replace("t.one", "t.good");
    let parsed = parse_registry_named(&format!("{bad}{good}"), "mixed.reg");
    assert_eq!(parsed.records.len(), 1);
    assert_eq!(parsed.records[0].id, "t.good");
    let d = &parsed.diagnostics[0];
    assert_eq!(d.record.as_deref(), Some("t.bad"));
    assert_eq!(d.line, 7);
}

#[test]
fn string_escapes_and_comments() {
    let text = ONE.replace("note = \"\"", "note = \"say \\\"hi\\\" \\\\ ok\"  # trailing");
    let parsed = parse_registry(&text);
    assert!(parsed.is_ok(), "{:?}", parsed.diagnostics);
    assert_eq!(parsed.records[0].note, "say \"hi\" \\ ok");
    let bad = ONE.replace("note = \"\"", "note = \"\\n\"");
    assert!(!parse_registry(&bad).is_ok());
}

#[test]
fn tail_strategy_syntax() {
    let t: TailStrategy = "algebraic ladder=-1/2 order=3".parse().unwrap();
    let ladder: Vec<String> = t.full_ladder().iter().map(|r| r.to_string()).collect();
    assert_eq!(ladder, ["-1/2", "-3/2", "-5/2"]);
    assert_eq!(t.to_string(), "algebraic ladder=-1/2 order=3");
    assert!("geometric ratio=1 from=0".parse::<TailStrategy>().is_err());
    assert!("algebraic ladder=-1,-1/2 order=2".parse::<TailStrategy>().is_err());
    assert!("algebraic ladder=-1 order=2 base=63".parse::<TailStrategy>().is_err());
}

#[test]
fn shipped_section_two_file_is_clean_and_large() {
    let (_, text) = builtin_sources().iter().find(|(n, _)| *n == "paper_s2.reg").unwrap();
    let parsed = parse_registry(text);
    assert!(parsed.is_ok(), "{:?}", parsed.diagnostics);
    assert!(parsed.records.len() >= 20);
}

#[test]
fn builtin_contains_named_records() {
    let all = builtin_registry();
    let find = |id: &str| all.iter().find(|r| r.id == id).unwrap_or_else(|| panic!("missing {id}"));
    assert_eq!(find("s5.Y.euler").rhs.to_string(), "pi^2/18");
    let start = |r: &IdentityRecord| match &r.lhs {
        Lhs::Series(s) => s.start,
        _ => panic!("not a series"),
    };
    let corrected = find("s2.G2t.sqrt2");
    let printed = find("s2.G2t.sqrt2.printed");
    assert_eq!((start(corrected), corrected.as_printed), (0, false));
    assert_eq!((start(printed), printed.as_printed), (1, true));
}

#[test]
fn every_shipped_record_round_trips() {
    for r in builtin_registry() {
        let text = serialize_record(&r);
        let back = parse_registry(&text);
        assert!(back.is_ok(), "{}: {:?}", r.id, back.diagnostics);
        assert_eq!(back.records, vec![r]);
    }
}

#[test]
fn paper_refs_are_nonempty_and_unique() {
    let all = builtin_registry();
    let mut seen = BTreeSet::new();
    for r in &all {
        assert!(!r.paper_ref.trim().is_empty(), "{}", r.id);
        assert!(seen.insert(r.paper_ref.clone()), "duplicate reference on {}", r.id);
    }
}

#[test]
fn bindings_enumerate_the_product() {
    let ps = ParamRange::parse_list("s=-1..1, r=0..1").unwrap();
    let labels: Vec<String> = bindings_of(&ps).iter().map(|e| e.label()).collect();
    assert_eq!(labels.len(), 6);
    assert!(labels.contains(&"r=1;s=-1".to_string()) || labels.contains(&"s=-1;r=1".to_string()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn expression_parser_is_total(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_expression(&text);
    }

    #[test]
    fn registry_parser_is_total(bytes in proptest::collection::vec(any::<u8>(), 0..256)) {
        let text = String::from_utf8_lossy(&bytes);
        let _ = parse_registry(&text);
    }

    #[test]
    fn registry_parser_survives_mutations(pos in 0usize..400, ch in proptest::char::any()) {
        let mut chars: Vec<char> = ONE.chars().collect();
        let i = pos % chars.len();
        chars[i] = ch;
        let text: String = chars.into_iter().collect();
        let parsed = parse_registry(&text);
        prop_assert!(parsed.records.len() + parsed.diagnostics.len() >= 1 || text.trim().is_empty());
    }
}
