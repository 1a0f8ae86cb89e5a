mod common;

use common::RUSSIAN;
use proptest::prelude::*;
use romanlab::{
    apply_ruleset, compile_ruleset, invert_iso9, uconv, InvertError, RuleError, SchemeId, SchemeRegistry, UconvTarget,
};

fn iso9() -> &'static romanlab::RuleSet {
    SchemeRegistry::bundled().get(SchemeId::Iso9).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn iso9_round_trip(chars in prop::collection::vec(
        prop::sample::select(RUSSIAN.chars().chain([' ', '.']).collect::<Vec<_>>()), 0..40)) {
        let x: String = chars.into_iter().collect();
        let latin = apply_ruleset(iso9(), &x);
        prop_assert_eq!(invert_iso9(&latin).unwrap(), x);
    }
}

#[test]
fn iso9_is_invertible_and_uroman_is_not() {
    assert!(iso9().is_invertible());
    assert!(iso9().len() >= 66);
}

#[test]
fn inverter_names_offending_span() {
    match invert_iso9("Čajq") {
        Err(InvertError::OutsideImage { span, text }) => {
            assert_eq!(text, "q");
            assert_eq!(&"Čajq"[span], "q");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn compile_examples() {
    let rs = compile_ruleset("ж -> ž\nш -> š\n").unwrap();
    assert_eq!(rs.len(), 2);
    assert!(rs.is_invertible());
    assert!(!compile_ruleset("а -> a\nя -> a\n").unwrap().is_invertible());
    assert_eq!(compile_ruleset("").unwrap_err().to_string(), "empty ruleset");
    assert!(matches!(compile_ruleset("# only a comment\n"), Err(RuleError::Empty)));
    match compile_ruleset("а -> a\nб b\n") {
        Err(RuleError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        compile_ruleset("а -> a\nа -> b\n"),
        Err(RuleError::Duplicate { .. })
    ));
    assert_eq!(apply_ruleset(&rs, ""), "");
}

#[test]
fn pinyin_one_syllable_per_character() {
    let out = uconv("人人生而自由平等", UconvTarget::Scheme(SchemeId::Pinyin));
    let syllables: Vec<&str> = out.split(' ').collect();
    assert_eq!(syllables.len(), 8);
    for s in syllables {
        let marks = s.chars().filter(|c| "āáǎàēéěèīíǐìōóǒòūúǔùǖǘǚǜ".contains(*c)).count();
        assert!(marks <= 1, "{s}");
    }
}

#[test]
fn latin_runs_pass_through_auto_dispatch() {
    assert_eq!(uconv("tiếng Việt", UconvTarget::Auto), "tiếng Việt");
    assert_eq!(uconv("", UconvTarget::Auto), "");
}

#[test]
fn apply_is_deterministic() {
    let text = "Съешь же ещё этих мягких французских булок, да выпей чаю.";
    let a = apply_ruleset(iso9(), text);
    assert_eq!(a, apply_ruleset(iso9(), text));
    assert_eq!(invert_iso9(&a).unwrap(), text);
}
