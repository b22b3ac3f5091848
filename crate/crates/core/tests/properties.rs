//! Property tests across modules.

use proptest::prelude::*;
use uqbasis::canonical::CanonicalBasis;
use uqbasis::quiver::WeylWord;
use uqbasis::report::{emit_report, parse_report, Format, Record, Report, ReportItem};

fn record() -> impl Strategy<Value = Record> {
    (
        "[a-z_]{1,8}",
        prop::collection::btree_map("[a-z]{1,6}", prop_oneof![any::<i64>().prop_map(serde_json::Value::from), "[ -~]{0,12}".prop_map(serde_json::Value::from)], 0..5),
    )
        .prop_map(|(name, fields)| Record { name, fields })
}

proptest! {
    #[test]
    fn report_json_round_trip(recs in prop::collection::vec(record(), 0..6)) {
        let r = Report { items: recs.into_iter().map(ReportItem::Record).collect() };
        let out = emit_report(&r, Format::Json).unwrap();
        prop_assert_eq!(parse_report(&out).unwrap(), r);
    }

    #[test]
    fn csv_and_tex_never_fail(recs in prop::collection::vec(record(), 0..6)) {
        let r = Report { items: recs.into_iter().map(ReportItem::Record).collect() };
        prop_assert!(emit_report(&r, Format::Csv).is_ok());
        prop_assert!(emit_report(&r, Format::Tex).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `B(w)` is closed under `e_i` for every letter: membership is
    /// preserved by the operators that stay inside it.
    #[test]
    fn bw_contains_closed_under_e(c in prop::collection::vec(0u32..3, 3), w in 0usize..6) {
        let cb = CanonicalBasis::preset("A2").unwrap();
        let word: WeylWord = cb.datum().weyl_elements()[w].clone();
        if cb.bw_contains(&word, &c).unwrap() {
            for i in cb.datum().vertices() {
                if let Some(e) = cb.e_tilde(i, &c).unwrap() {
                    prop_assert!(cb.bw_contains(&word, &e).unwrap());
                }
            }
        }
    }

    /// `*` is an involution on labels and preserves weights.
    #[test]
    fn star_is_involution(c in prop::collection::vec(0u32..3, 6)) {
        let cb = CanonicalBasis::preset("A3").unwrap();
        let s = cb.star_label(&c).unwrap();
        prop_assert_eq!(cb.weight_of(&s), cb.weight_of(&c));
        prop_assert_eq!(cb.star_label(&s).unwrap(), c);
    }
}
