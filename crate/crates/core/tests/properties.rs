use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qci_core::filter::ShrinkIndex;
use qci_core::matrix::{eval_tokens, token_matrix_float};
use qci_core::rules::{canonicalize, collapse_rules, negate_rules, normalize_rules, phase_rules};
use qci_core::token::{Kind, I};
use qci_core::*;

fn token() -> impl Strategy<Value = Token> {
    (0..LAMBDA.len()).prop_map(|i| LAMBDA[i])
}

fn word(max: usize) -> impl Strategy<Value = Vec<Token>> {
    prop::collection::vec(token(), 0..=max)
}

fn signed(max: usize) -> impl Strategy<Value = SignedWord> {
    (any::<bool>(), word(max)).prop_map(|(neg, t)| SignedWord::new(if neg { Sign::Minus } else { Sign::Plus }, t))
}

fn cyclo() -> impl Strategy<Value = CycloNum> {
    (-9i64..9, -9i64..9, -9i64..9, -9i64..9, 0u32..4).prop_map(|(a, b, c, d, k)| CycloNum::new(a, b, c, d, k))
}

/// Naive float reference: entries from `to_complex` of independently built values.
fn float_reference(w: &[Token]) -> FloatMatrix {
    w.iter().fold(FloatMatrix::identity(), |acc, &t| acc * token_matrix_float(t))
}

proptest! {
    #[test]
    fn homomorphism(u in word(5), v in word(5)) {
        let uv: Vec<Token> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(eval_tokens(&uv), eval_tokens(&u) * eval_tokens(&v));
    }

    #[test]
    fn conjugation(x in cyclo(), y in cyclo()) {
        prop_assert_eq!(x.conj().conj(), x);
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
    }

    #[test]
    fn canonical_form_is_reduced(x in cyclo()) {
        let [a, b, c, d] = x.coeffs();
        prop_assert!(x.denom_exp() == 0 || [a, b, c, d].iter().any(|v| v % 2 != 0));
        let z = x.to_complex() - CycloNum::new(2 * a, 2 * b, 2 * c, 2 * d, x.denom_exp() + 1).to_complex();
        prop_assert!(z.norm() < 1e-12);
    }

    #[test]
    fn words_stay_unitary(w in word(6)) {
        prop_assert!(eval_tokens(&w).is_unitary());
    }

    #[test]
    fn canonicalize_preserves_value(w in signed(6)) {
        let c = canonicalize(I, w.clone(), true);
        prop_assert_eq!(eval_word(&c.rhs), eval_word(&w));
        prop_assert!(c.rhs.tokens.iter().all(|t| !t.kind().is_subscripted() || (1..=3).contains(&t.subscript())));
        prop_assert!(c.rhs.tokens.iter().skip(1).all(|t| !t.is_phase()));
        prop_assert!(c.rhs.tokens.windows(2).all(|p| !(p[0].kind().is_subscripted() && p[0].kind() == p[1].kind())));
    }
}

#[test]
fn float_fidelity_exhaustive_up_to_two() {
    let mut words: Vec<Vec<Token>> = LAMBDA.iter().map(|&t| vec![t]).collect();
    for a in LAMBDA {
        for b in LAMBDA {
            words.push(vec![a, b]);
        }
    }
    assert_eq!(words.len(), 35 + 35 * 35);
    for w in words {
        let sw = SignedWord::plus(w.clone());
        let d = eval_word(&sw).to_float().max_abs_diff(&eval_word_float(&sw));
        assert!(d <= 1e-12, "{sw}: {d}");
        assert!(float_reference(&w).max_abs_diff(&eval_word_float(&sw)) == 0.0);
    }
}

#[test]
fn rule_soundness() {
    let rules: Vec<_> = [negate_rules(), phase_rules(), normalize_rules(), collapse_rules()].concat();
    for r in &rules {
        assert_eq!(eval_tokens(&r.pattern), eval_word(&r.replacement), "{:?}", r);
    }
}

#[test]
fn miner_is_sound_up_to_three() {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    assert_eq!(raw.false_positives, 0);
    for id in &raw.identities {
        assert!(id.verify());
    }
}

#[test]
fn every_filtered_identity_verifies() {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    for cfg in [FilterConfig::KEEP_ROTATIONS, FilterConfig::DROP_ROTATIONS, FilterConfig::ALL] {
        let f = filter(&raw, cfg).unwrap();
        for e in &f.entries {
            assert!(e.identity.verify(), "{:?}", e.identity);
            for a in &e.ancestors {
                assert!(a.verify());
            }
        }
    }
}

#[test]
fn filtered_rhs_has_no_shorter_mined_word() {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    let index = ShrinkIndex::new(&raw);
    let f = filter(&raw, FilterConfig::KEEP_ROTATIONS).unwrap();
    for e in f.entries.iter().filter(|e| e.origin_len >= 3) {
        assert!(!index.shortens(&e.identity.rhs.tokens, e.origin_len), "{:?}", e.identity);
    }
}

#[test]
fn grouped_identities_have_all_instances() {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    let drop = filter(&raw, FilterConfig::DROP_ROTATIONS).unwrap();
    let all = filter(&raw, FilterConfig::ALL).unwrap();
    let plain: std::collections::HashSet<&Identity> = drop.identities().collect();
    for id in all.identities() {
        for inst in id.instances() {
            assert!(plain.contains(&inst), "{:?}", inst);
        }
    }
    let expanded: std::collections::HashSet<Identity> = all.instances().into_iter().collect();
    assert_eq!(expanded.len(), drop.len());
}

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> SignedWord {
    let n = rng.gen_range(0..=max);
    SignedWord::plus((0..n).map(|_| LAMBDA[rng.gen_range(0..LAMBDA.len())]).collect())
}

#[test]
fn float_fidelity_random_length_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let w = SignedWord::plus((0..4).map(|_| LAMBDA[rng.gen_range(0..LAMBDA.len())]).collect());
        assert!(eval_word(&w).to_float().max_abs_diff(&eval_word_float(&w)) <= 1e-12, "{w}");
    }
}

#[test]
fn simplify_preserves_value_and_never_grows() {
    let s = default_simplifier();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let w = random_word(&mut rng, 8);
        let (out, trace) = s.simplify(&w);
        assert_eq!(eval_word(&out), eval_word(&w), "{w} -> {out}");
        assert!(out.len() <= w.len(), "{w} -> {out}");
        assert_eq!(s.simplify(&out).0, out, "not idempotent on {w}");
        for step in &trace.steps {
            assert_eq!(eval_word(&step.before), eval_word(&step.after));
        }
        if let (Some(a), Some(b)) = (trace.steps.first(), trace.steps.last()) {
            assert_eq!((&a.before, &b.after), (&w, &out));
        }
        assert!(trace.steps.windows(2).all(|p| p[0].after == p[1].before));
    }
}

#[test]
fn simplify_is_optimal_on_mined_length_three() {
    let raw = mine(3, DEFAULT_TOLERANCE).unwrap();
    let s = default_simplifier();
    for id in raw.of_length(3) {
        let (out, _) = s.simplify(&id.rhs);
        let best = usize::from(id.lhs != I);
        assert!(out.len() <= best, "{} -> {out}", id.rhs);
        assert_eq!(eval_word(&out), token_matrix(id.lhs));
    }
}

#[test]
fn known_simplifications() {
    let s = default_simplifier();
    let run = |w: &str| s.simplify(&io::parse_word(w).unwrap()).0.to_string();
    assert_eq!(run("X Y X"), "- Y");
    assert_eq!(run("H X H"), "Z");
    assert_eq!(run("H H"), "I");
    assert_eq!(run("X4"), "- I");
    assert_eq!(run("T T"), "S");
    assert_eq!(run(&format!("{}", Token::sub(Kind::Ph, 1))), "P1");
}
