//! Shared fixtures: the curated suite of convergent, forward-closed systems
//! and random word helpers.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srslm::analysis::CertifiedSystem;
use srslm::rewrite::is_irreducible;
use srslm::system::{Assumption, RewriteSystem, Symbol, Word};

pub struct SuiteSystem {
    pub name: String,
    pub original: RewriteSystem,
    pub certified: CertifiedSystem,
}

impl SuiteSystem {
    pub fn reduced(&self) -> &RewriteSystem {
        self.certified.system()
    }
}

/// Hand-picked systems: (precedence, rules, assume termination).
pub const HAND_PICKED: &[(&str, &[(&str, &str)], bool)] = &[
    ("abc", &[("ab", "c")], false),
    ("ab", &[("aa", "a")], false),
    ("cab", &[("ab", "ca")], false),
    ("aegb", &[("ab", "ag"), ("b", "e"), ("g", "e")], false),
    ("ab", &[("aa", "")], false),
    ("aA", &[("aA", ""), ("Aa", "")], false),
    ("ab", &[("ab", "")], false),
    ("abcd", &[("abc", "d")], false),
    ("abcd", &[("ab", "c"), ("db", "ac")], false),
    ("abcd", &[("ab", "c"), ("cd", "ac")], false),
    ("abcd", &[("bb", "c"), ("ad", "abb")], true),
    ("ab", &[("ab", "a")], false),
    ("abc", &[("abc", "ac")], false),
    ("ab", &[("aa", "a"), ("bb", "b")], false),
    ("abc", &[("ab", "a"), ("cb", "c")], false),
    ("abc", &[("abc", "b")], false),
    ("ab", &[("aba", "a")], false),
    ("ab", &[("ab", ""), ("ba", "")], false),
    ("ab", &[("ba", "b")], false),
    ("abc", &[("abc", "ab")], false),
    ("ab", &[("aa", ""), ("bb", "")], false),
    ("abcd", &[("ab", "cd")], true),
    ("aAbB", &[("aA", ""), ("Aa", ""), ("bB", ""), ("Bb", "")], false),
];

pub fn build(alpha: &str, rules: &[(&str, &str)], assume: bool) -> RewriteSystem {
    let r = RewriteSystem::from_strs(alpha, rules).unwrap();
    if assume {
        r.with_assumption(Assumption::Terminating)
    } else {
        r
    }
}

/// A random system over `alpha` whose rules all decrease in short-lex order.
pub fn random_system(rng: &mut impl Rng, alpha: &str, max_rules: usize) -> RewriteSystem {
    let n = alpha.chars().count();
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(1..=max_rules) {
        let l_len = rng.gen_range(1..=3);
        let lhs: Vec<usize> = (0..l_len).map(|_| rng.gen_range(0..n)).collect();
        let r_len = rng.gen_range(0..l_len);
        let rhs: Vec<usize> = (0..r_len).map(|_| rng.gen_range(0..n)).collect();
        rules.push((Word::from_ranks(&lhs), Word::from_ranks(&rhs)));
    }
    let alphabet = srslm::system::Alphabet::new(alpha.chars()).unwrap();
    let mut out: Vec<srslm::system::Rule> = Vec::new();
    for (l, r) in rules {
        let rule = srslm::system::Rule::new(l, r);
        if !out.contains(&rule) {
            out.push(rule);
        }
    }
    RewriteSystem::new(alphabet, out).unwrap()
}

/// Random systems that certify, skipping ones without any rule of length
/// two or more on the left.
pub fn random_suite(seed: u64, count: usize) -> Vec<SuiteSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabets = ["abc", "abcd"];
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 100_000, "random suite generation stalled");
        let alpha = alphabets.choose(&mut rng).unwrap();
        let r = random_system(&mut rng, alpha, 5);
        if r.rules().iter().all(|rule| rule.lhs.len() < 2) {
            continue;
        }
        if let Ok(c) = CertifiedSystem::certify(&r) {
            if out.iter().any(|s: &SuiteSystem| s.certified.system() == c.system()) {
                continue;
            }
            out.push(SuiteSystem {
                name: format!("random#{} {}", out.len(), r),
                original: r,
                certified: c,
            });
        }
    }
    out
}

pub fn hand_picked() -> Vec<SuiteSystem> {
    HAND_PICKED
        .iter()
        .filter_map(|(alpha, rules, assume)| {
            let r = build(alpha, rules, *assume);
            CertifiedSystem::certify(&r).ok().map(|c| SuiteSystem {
                name: format!("{r} over {alpha}"),
                original: r,
                certified: c,
            })
        })
        .collect()
}

/// The curated suite: every hand-picked system that certifies plus seeded
/// random ones.
pub fn suite() -> Vec<SuiteSystem> {
    let mut s = hand_picked();
    s.extend(random_suite(0x5eed, 8));
    s
}

pub fn random_word(rng: &mut impl Rng, system: &RewriteSystem, max_len: usize) -> Word {
    let n = system.alphabet().len();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Symbol::from_rank(rng.gen_range(0..n))).collect()
}

/// Random irreducible word, built symbol by symbol and skipping symbols
/// that would complete a redex.
pub fn random_irreducible(rng: &mut impl Rng, system: &RewriteSystem, max_len: usize) -> Word {
    let n = system.alphabet().len();
    let len = rng.gen_range(0..=max_len);
    let mut w = Word::empty();
    for _ in 0..len {
        let mut options: Vec<usize> = (0..n).collect();
        options.shuffle(rng);
        let next = options.into_iter().map(Symbol::from_rank).find(|&s| {
            let mut t = w.clone();
            t.push(s);
            is_irreducible(system, &t)
        });
        match next {
            Some(s) => w.push(s),
            None => break,
        }
    }
    w
}

/// All words of length at most `max_len`, in short-lex order.
pub fn all_words(system: &RewriteSystem, max_len: usize) -> Vec<Word> {
    let n = system.alphabet().len();
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * n);
        for w in &level {
            for s in 0..n {
                let mut t = w.clone();
                t.push(Symbol::from_rank(s));
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A forward-closed family with `rules` rules over the ten symbols
/// `a..j`. Left-hand sides are `S·M^k·T` with `S` in {a, b, c}, `M` in
/// {d, e, f} and `T` in {g, h}, so no two of them overlap and no
/// right-hand side (over {d, e, f, i, j}) can complete one.
pub fn forward_closed_family(seed: u64, rules: usize) -> RewriteSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = ['a', 'b', 'c'];
    let middles = ['d', 'e', 'f'];
    let ends = ['g', 'h'];
    let rhs_symbols = ['d', 'e', 'f', 'i', 'j'];
    let mut lhs_pool: Vec<String> = Vec::new();
    for k in 0..=3u32 {
        for s in starts {
            for m in 0..3usize.pow(k) {
                for e in ends {
                    let mut l = String::from(s);
                    let mut code = m;
                    for _ in 0..k {
                        l.push(middles[code % 3]);
                        code /= 3;
                    }
                    l.push(e);
                    lhs_pool.push(l);
                }
            }
        }
    }
    assert!(rules <= lhs_pool.len());
    lhs_pool.shuffle(&mut rng);
    let pairs: Vec<(String, String)> = lhs_pool
        .into_iter()
        .take(rules)
        .map(|l| {
            let len = rng.gen_range(1..=2.min(l.len() - 1));
            let r: String = (0..len).map(|_| *rhs_symbols.choose(&mut rng).unwrap()).collect();
            (l, r)
        })
        .collect();
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    RewriteSystem::from_strs("abcdefghij", &borrowed).unwrap()
}
