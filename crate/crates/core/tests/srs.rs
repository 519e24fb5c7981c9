mod common;

use std::collections::{HashMap, HashSet};

use common::{connected, reachable};
use unialg::srs::{knuth_bendix, Completion, KbBudget, Presentation, RewriteSystem, Word};

fn complete(p: &Presentation) -> RewriteSystem {
    match knuth_bendix(p, KbBudget::default()).unwrap() {
        Completion::Complete(s) => s,
        Completion::Exhausted { reason, .. } => panic!("not complete: {}", reason),
    }
}

/// Checks `equal` against a model of the monoid: `eval` must separate
/// exactly the classes. Also checks that reduction is idempotent and that
/// normal forms are unique per class.
fn check_against_model<K: std::hash::Hash + Eq + Clone + std::fmt::Debug>(
    p: &Presentation,
    max_len: usize,
    eval: impl Fn(&[usize]) -> K,
) {
    let s = complete(p);
    assert!(s.is_confluent());
    let words = p.alphabet.words_up_to(max_len);
    let mut nf_of_class: HashMap<K, Word> = HashMap::new();
    for w in &words {
        let nf = s.reduce(w);
        assert!(s.is_irreducible(&nf));
        assert_eq!(s.reduce(&nf), nf);
        assert_eq!(eval(&nf), eval(w), "reduction leaves the class of {:?}", w);
        let prev = nf_of_class.entry(eval(w)).or_insert_with(|| nf.clone());
        assert_eq!(*prev, nf, "two normal forms for one class");
    }
    let distinct: HashSet<Word> = words.iter().map(|w| s.reduce(w)).collect();
    assert_eq!(distinct.len(), nf_of_class.len());
    for a in words.iter().filter(|w| w.len() <= 4) {
        for b in words.iter().filter(|w| w.len() <= 4) {
            assert_eq!(s.equal(a, b), eval(a) == eval(b), "{:?} vs {:?}", a, b);
        }
    }
}

#[test]
fn symmetric_group_presentation() {
    // a, b are the transpositions (0 1) and (1 2).
    let p = Presentation::from_strs(&["a", "b"], &["aa = 1", "bb = 1", "ababab = 1"]).unwrap();
    let gens = [[1, 0, 2], [0, 2, 1]];
    check_against_model(&p, 6, |w| {
        w.iter().fold([0usize, 1, 2], |acc, &l| {
            let g = gens[l];
            [g[acc[0]], g[acc[1]], g[acc[2]]]
        })
    });
}

#[test]
fn free_commutative_monoid() {
    let p = Presentation::from_strs(&["a", "b"], &["ba = ab"]).unwrap();
    check_against_model(&p, 6, |w| {
        (w.iter().filter(|&&l| l == 0).count(), w.len())
    });
}

#[test]
fn cyclic_with_tail() {
    // a^3 = a: the classes are 1, a, a^2.
    let p = Presentation::from_strs(&["a"], &["aaa = a"]).unwrap();
    check_against_model(&p, 6, |w| match w.len() {
        0 => 0,
        n => 2 - n % 2,
    });
}

#[test]
fn word_problem_against_rewriting_search() {
    // Equalities found by search over intermediate words of length at most
    // 7 must hold, and every rule of the completed system must be derivable
    // from the relations, so `equal` is exactly the word problem.
    for (letters, rels) in [
        (&["x", "y", "z"][..], &["xy = 1", "zx = 1"][..]),
        (&["a", "b"][..], &["aa = 1", "bab = aba"][..]),
        (&["a", "b"][..], &["aab = b", "bb = b"][..]),
    ] {
        let p = Presentation::from_strs(letters, rels).unwrap();
        let s = complete(&p);
        let words = p.alphabet.words_up_to(5);
        let short: Vec<&Word> = words.iter().filter(|w| w.len() <= 3).collect();
        for a in &words {
            let class = reachable(&p.relations, a, 7);
            for b in &short {
                if class.contains(*b) {
                    assert!(s.equal(a, b), "{:?} = {:?} by search", a, b);
                }
            }
        }
        for r in s.rules() {
            assert!(
                connected(&p.relations, &r.lhs, &r.rhs, 9),
                "rule {:?} -> {:?} not derivable",
                r.lhs,
                r.rhs
            );
        }
    }
}

#[test]
fn parse_and_print_round_trip() {
    let text = "# left and right inverses\nx y z\nxy = 1\nzx = 1\n";
    let p = Presentation::parse(text).unwrap();
    assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    let s = complete(&p);
    let printed = s.to_string();
    assert!(printed.contains("z -> y"), "{}", printed);
}
