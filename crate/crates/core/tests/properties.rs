mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use common::SuiteSystem;
use srslm::cli::parse_system_file;
use srslm::decide::causes_collapse;
use srslm::oracle::{all_normal_forms, CapExploration, Outcome, SearchBudget};
use srslm::pushdown::{CollapsePda, Terminal};
use srslm::rewrite::{decompose_normalization, is_irreducible, ll_step, normalize};
use srslm::system::{shortlex, Symbol, Word};

fn suite() -> &'static [SuiteSystem] {
    static SUITE: OnceLock<Vec<SuiteSystem>> = OnceLock::new();
    SUITE.get_or_init(common::suite)
}

fn pick(index: prop::sample::Index) -> &'static SuiteSystem {
    let s = suite();
    &s[index.index(s.len())]
}

fn raw_word(s: &SuiteSystem, ranks: &[usize]) -> Word {
    let n = s.reduced().alphabet().len();
    Word::from_ranks(&ranks.iter().map(|r| r % n).collect::<Vec<_>>())
}

fn irreducible(s: &SuiteSystem, ranks: &[usize]) -> Word {
    let w = raw_word(s, ranks);
    normalize(s.reduced(), &w).unwrap()
}

fn ranks(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shortlex_is_a_total_order(a in ranks(5), b in ranks(5), c in ranks(5)) {
        let [a, b, c] = [a, b, c].map(|r| Word::from_ranks(&r));
        prop_assert_eq!(shortlex(&a, &b), shortlex(&b, &a).reverse());
        prop_assert_eq!(shortlex(&a, &b).is_eq(), a == b);
        if shortlex(&a, &b).is_lt() && shortlex(&b, &c).is_lt() {
            prop_assert!(shortlex(&a, &c).is_lt());
        }
        if a.len() < b.len() {
            prop_assert!(shortlex(&a, &b).is_lt());
        }
    }

    #[test]
    fn normal_forms_are_irreducible_and_stable(i in any::<prop::sample::Index>(), w in ranks(12)) {
        let s = pick(i);
        let r = s.reduced();
        let w = raw_word(s, &w);
        let n = normalize(r, &w).unwrap();
        prop_assert!(is_irreducible(r, &n));
        prop_assert_eq!(normalize(r, &n).unwrap(), n.clone());
        prop_assert_eq!(ll_step(r, &n), None);
        prop_assert_eq!(normalize(&s.original, &w).unwrap(), n);
    }

    #[test]
    fn every_strategy_reaches_the_same_normal_form(i in any::<prop::sample::Index>(), w in ranks(7)) {
        let s = pick(i);
        let w = raw_word(s, &w);
        let forms = all_normal_forms(&s.original, &w, SearchBudget::words(16));
        prop_assume!(forms.complete);
        prop_assert_eq!(forms.forms.into_iter().collect::<Vec<_>>(), vec![normalize(&s.original, &w).unwrap()]);
    }

    #[test]
    fn stack_always_holds_the_normal_form(i in any::<prop::sample::Index>(), u in ranks(3), w in ranks(8)) {
        let s = pick(i);
        let r = s.reduced();
        let u = irreducible(s, &u);
        let w = raw_word(s, &w);
        let pda = CollapsePda::new(&s.certified, u.clone(), u.clone()).unwrap();
        let trace = pda.run_word(&w).unwrap();
        prop_assert_eq!(&trace.initial, &u);
        for (k, step) in trace.steps.iter().take(w.len()).enumerate() {
            prop_assert_eq!(&step.stack, &normalize(r, &u.concat(&w[..=k])).unwrap());
        }
        let expected = !w.is_empty() && normalize(r, &u.concat(&w)).unwrap() == u;
        prop_assert_eq!(trace.accepted, expected);
    }

    #[test]
    fn decomposition_conditions(i in any::<prop::sample::Index>(), x in ranks(6), y in ranks(6)) {
        let s = pick(i);
        let r = s.reduced();
        let (x, y) = (irreducible(s, &x), irreducible(s, &y));
        let steps = decompose_normalization(&s.certified, &x, &y).unwrap();
        prop_assert_eq!(&steps[0].x, &x);
        let joined: Word = steps.iter().flat_map(|st| st.y.iter().copied()).collect();
        prop_assert_eq!(joined, y.clone());
        for pair in steps.windows(2) {
            let next = ll_step(r, &pair[0].x.concat(&pair[0].y));
            prop_assert_eq!(next.as_ref(), Some(&pair[1].x));
        }
        let last = steps.last().unwrap();
        prop_assert_eq!(last.x.concat(&last.y), normalize(r, &x.concat(&y)).unwrap());
    }

    #[test]
    fn collapse_closes_under_prefixes(i in any::<prop::sample::Index>(), x in ranks(3)) {
        let s = pick(i);
        let r = s.reduced();
        let x = irreducible(s, &x);
        if let Some(y) = causes_collapse(&s.certified, &x).unwrap() {
            prop_assert_eq!(normalize(r, &x.concat(&y)).unwrap(), x.clone());
            for k in 0..=y.len() {
                let xy1 = x.concat(&y[..k]);
                if is_irreducible(r, &xy1) {
                    prop_assert!(causes_collapse(&s.certified, &xy1).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn system_files_round_trip(i in any::<prop::sample::Index>()) {
        let s = pick(i);
        for system in [&s.original, s.reduced()] {
            let parsed = parse_system_file(&system.to_srs_text()).unwrap();
            prop_assert_eq!(&parsed.system, system);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decision_matches_cap_search(i in any::<prop::sample::Index>(), u in ranks(2), w in ranks(5)) {
        let s = pick(i);
        let u = irreducible(s, &u);
        let v = normalize(s.reduced(), &u.concat(&raw_word(s, &w))).unwrap();
        let decision = srslm::pushdown::decide_language(&s.certified, &u, &v).unwrap();
        let oracle = CapExploration::run(&s.original, &u, SearchBudget::words(7)).witness(&v);
        match oracle {
            Outcome::Found(o) => {
                // Both are the short-lex least witness.
                prop_assert_eq!(decision.witness, Some(o));
            }
            Outcome::NotFound => {
                prop_assert!(decision.witness.is_none_or(|d| d.len() > 7));
            }
            Outcome::Unknown => prop_assume!(false),
        }
    }

    #[test]
    fn grammar_and_machine_accept_the_same_words(i in any::<prop::sample::Index>(), u in ranks(2), v in ranks(2)) {
        let s = pick(i);
        let r = s.reduced();
        prop_assume!(r.alphabet().len() <= 3);
        let (u, v) = (irreducible(s, &u), irreducible(s, &v));
        let pda = CollapsePda::new(&s.certified, u, v).unwrap();
        let language = pda.to_grammar().unwrap().words_up_to(6);
        for w in common::all_words(r, 5) {
            let mut tape: Vec<Terminal> = w.iter().map(|&c: &Symbol| Terminal::Sym(c)).collect();
            tape.push(Terminal::End);
            prop_assert_eq!(pda.run_word(&w).unwrap().accepted, language.contains(&tape), "w = {}", r.render(&w));
        }
    }
}
