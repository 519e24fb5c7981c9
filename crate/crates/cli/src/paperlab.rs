//! Fixture suites: each checked claim becomes one `[pass]` or `[FAIL]` line
//! led by a short anchor naming the claim.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unialg::algcore::FiniteAlgebra;
use unialg::amalgam::{coset_torsion_scan, stabilizer_coset_survey, AmalgamCtx};
use unialg::freeness::oracle::check_agreement;
use unialg::freeness::{
    no_free_triple_bounded, t_relation_obstruction, verify_free_pair, witness_triple_hom,
    FreeElement, FreeTermContext, Letter, MWord, Variety,
};
use unialg::homsearch::are_isomorphic;
use unialg::prevariety::{
    coproduct, enumerate_members, free_algebra, is_compatible, is_p_subdirectly_irreducible,
    minimum_compatible_cover, quasi_identity_holds, PrevarietyCtx, QuasiIdentity,
};
use unialg::srs::{coproduct_presentation, knuth_bendix, KbBudget, Presentation};
use unialg::Result;

use crate::report::{Outcome, Report};

pub const SUITES: &[&str] = &[
    "prop-2-1",
    "prop-2-2",
    "prop-2-3",
    "nf-oracle",
    "cd-family",
    "distinguished-elements",
    "monoid-amalgam",
    "amalgam-torsion",
    "constants-census",
    "all",
];

struct Suite {
    report: Report,
    failed: usize,
    passed: usize,
}

impl Suite {
    fn new() -> Self {
        Suite {
            report: Report::new(Outcome::Done),
            failed: 0,
            passed: 0,
        }
    }

    fn claim(&mut self, anchor: &str, ok: bool, detail: impl AsRef<str>) {
        let tag = if ok { "[pass]" } else { "[FAIL]" };
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.report
            .line(format!("{} {}: {}", tag, anchor, detail.as_ref()));
    }

    fn finish(mut self) -> Report {
        self.report.set("passed", self.passed);
        self.report.set("failed", self.failed);
        self.report.outcome = Outcome::from_bool(self.failed == 0);
        self.report
            .line(format!("{} passed, {} failed", self.passed, self.failed));
        self.report
    }
}

pub fn run(suite: &str) -> Result<Report> {
    let mut s = Suite::new();
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().copied().filter(|n| *n != "all").collect()
    } else {
        vec![suite]
    };
    for name in names {
        s.report.line(format!("== {}", name));
        match name {
            "prop-2-1" => prop_2_1(&mut s)?,
            "prop-2-2" => prop_2_2(&mut s)?,
            "prop-2-3" => prop_2_3(&mut s)?,
            "nf-oracle" => nf_oracle(&mut s),
            "cd-family" => cd_family(&mut s)?,
            "distinguished-elements" => distinguished_elements(&mut s)?,
            "monoid-amalgam" => monoid_amalgam(&mut s)?,
            "amalgam-torsion" => amalgam_torsion(&mut s)?,
            "constants-census" => constants_census(&mut s)?,
            other => {
                return Err(unialg::Error::InvalidArgument(format!(
                    "unknown suite `{}`",
                    other
                )))
            }
        }
    }
    Ok(s.finish())
}

fn prop_2_1(s: &mut Suite) -> Result<()> {
    let one = FreeTermContext::new(Variety::V1, 1);
    let words = one.words_up_to(4);
    let mut zero = 0;
    for u in &words {
        for v in &words {
            for w in &words {
                let e = one.apply_t(
                    &FreeElement::Word(u.clone()),
                    &FreeElement::Word(v.clone()),
                    &FreeElement::Word(w.clone()),
                );
                if e.is_zero() {
                    zero += 1;
                }
            }
        }
    }
    let total = words.len().pow(3);
    s.claim(
        "one-generator word triples have t = 0",
        zero == total,
        format!("{} of {} triples with words of length <= 4", zero, total),
    );

    let three = FreeTermContext::new(Variety::V1, 3);
    let txyz = three.normal_form(&three.parse("t(x, y, z)")?)?;
    s.claim(
        "t(x,y,z) survives over three generators",
        txyz.is_tag(),
        format!("normal form {}", three.display(&txyz)),
    );

    let pair = verify_free_pair(&one, 4)?;
    s.claim(
        "subalgebra on px, qx is free",
        pair.free,
        format!("{} elements checked to depth 4", pair.elements_checked),
    );

    let cert = no_free_triple_bounded(&one, 4)?;
    s.claim(
        "no subalgebra free on three generators",
        cert.holds,
        format!(
            "{} triples with words of length <= 4, {} with t = 0",
            cert.triples_checked, cert.word_triples_with_zero_t
        ),
    );
    Ok(())
}

fn prop_2_2(s: &mut Suite) -> Result<()> {
    let one = FreeTermContext::new(Variety::V0, 1);
    let t = one.normal_form(&one.parse("t(px, p(qx), q(qx))")?)?;
    s.claim(
        "t(px, pqx, qqx) = 0",
        t.is_zero(),
        format!("normal form {}", one.display(&t)),
    );
    let tag = one.normal_form(&one.parse("t(x, qx, px)")?)?;
    s.claim(
        "t(x, qx, px) survives",
        tag.is_tag(),
        format!("normal form {}", one.display(&tag)),
    );
    let triple = [one.parse_nf("px")?, one.parse_nf("pqx")?, one.parse_nf("qqx")?];
    s.claim(
        "px, pqx, qqx are not free",
        t_relation_obstruction(&one, &triple),
        "t vanishes on the triple but not on free generators",
    );
    let pair = verify_free_pair(&one, 4)?;
    s.claim(
        "subalgebra on px, qx is free in the variety",
        pair.free,
        format!("{} elements checked to depth 4", pair.elements_checked),
    );
    Ok(())
}

/// A word over `{p, q}` of length at most `max`.
pub fn random_word(rng: &mut ChaCha8Rng, max: usize) -> MWord {
    let len = rng.gen_range(0..=max);
    MWord(
        (0..len)
            .map(|_| if rng.gen_bool(0.5) { Letter::P } else { Letter::Q })
            .collect(),
    )
}

fn prop_2_3(s: &mut Suite) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2023);
    let mut ok = 0;
    let mut first_bad = None;
    let n = 100;
    for _ in 0..n {
        let (a, b, c) = (
            random_word(&mut rng, 8),
            random_word(&mut rng, 8),
            random_word(&mut rng, 8),
        );
        match witness_triple_hom(&a, &b, &c) {
            Ok(_) => ok += 1,
            Err(e) => {
                if first_bad.is_none() {
                    first_bad = Some(format!("({}, {}, {}): {}", a, b, c, e));
                }
            }
        }
    }
    s.claim(
        "px, pqx, pqqx map onto any word triple",
        ok == n,
        match first_bad {
            None => format!("{} seeded triples of length <= 8", n),
            Some(b) => format!("{} of {} succeeded; first failure {}", ok, n, b),
        },
    );
    Ok(())
}

fn nf_oracle(s: &mut Suite) {
    for v in [Variety::V1, Variety::V0] {
        for g in 1..=3 {
            let ctx = FreeTermContext::new(v, g);
            let r = check_agreement(&ctx);
            s.claim(
                &format!("normal forms match the schema oracle ({:?}, {} generator(s))", v, g),
                r.agrees(),
                format!("{} terms, {} disagreements", r.terms_checked, r.disagreement_count),
            );
        }
    }
}

fn cd_family(s: &mut Suite) -> Result<()> {
    let c = |d| FiniteAlgebra::cyclic_unary(d);
    let (c2, c3, c5) = (c(2)?, c(3)?, c(5)?);
    let p23 = PrevarietyCtx::new(vec![c2.clone(), c3.clone()])?;
    let (u23, _) = FiniteAlgebra::disjoint_union(&[&c2, &c3])?;
    let pu = PrevarietyCtx::new(vec![u23])?;

    let f = free_algebra(&p23, 1)?;
    let iso = are_isomorphic(&f.algebra, &c(6)?)?;
    s.claim(
        "free algebra on one generator is C_6",
        f.algebra.size() == 6 && iso,
        format!("{} elements, isomorphic to C_6: {}", f.algebra.size(), iso),
    );
    let q = QuasiIdentity::parse("a^6 x = x", f.algebra.signature())?;
    let holds = quasi_identity_holds(&f.algebra, &q)?;
    s.claim("free algebra satisfies a^6 x = x", holds, q.to_string());

    let pair = [c2.clone(), c3.clone()];
    let inc = is_compatible(&p23, &pair)?;
    let cp = coproduct(&p23, &pair)?;
    s.claim(
        "C_2 and C_3 are incompatible",
        !inc && cp.algebra.size() == 1,
        format!("coproduct has {} element(s)", cp.algebra.size()),
    );
    let comp = is_compatible(&pu, &pair)?;
    let cpu = coproduct(&pu, &pair)?;
    s.claim(
        "C_2 and C_3 are compatible in the prevariety of their union",
        comp && cpu.algebra.size() == 5,
        format!("coproduct has {} elements", cpu.algebra.size()),
    );

    let members = enumerate_members(&p23, 6)?;
    let mut si = Vec::new();
    for m in &members {
        if m.size() >= 2 && is_p_subdirectly_irreducible(&p23, m)?.0 {
            si.push(m.clone());
        }
    }
    let exact = si.len() == 2
        && si.iter().any(|a| are_isomorphic(a, &c2).unwrap_or(false))
        && si.iter().any(|a| are_isomorphic(a, &c3).unwrap_or(false));
    s.claim(
        "relatively subdirectly irreducible members are C_2 and C_3",
        exact,
        format!(
            "{} members of size <= 6, irreducible sizes {:?}",
            members.len(),
            si.iter().map(|a| a.size()).collect::<Vec<_>>()
        ),
    );

    let cover = minimum_compatible_cover(&p23, &pair)?;
    let cover_u = minimum_compatible_cover(&pu, &pair)?;
    s.claim(
        "cover sizes 2 and 1",
        cover.len() == 2 && cover_u.len() == 1,
        format!("{:?} and {:?}", cover, cover_u),
    );

    let cs = [c2, c3, c5];
    let unions: Vec<FiniteAlgebra> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| FiniteAlgebra::disjoint_union(&[&cs[i], &cs[j]]).map(|u| u.0))
        .collect::<Result<_>>()?;
    let ctx = PrevarietyCtx::new(unions)?;
    let mut pairs_ok = true;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        pairs_ok &= is_compatible(&ctx, &[cs[i].clone(), cs[j].clone()])?;
    }
    let all = is_compatible(&ctx, &cs)?;
    s.claim(
        "C_2, C_3, C_5 pairwise compatible",
        pairs_ok,
        "generators are the three pairwise unions",
    );
    s.claim(
        "C_2, C_3, C_5 together incompatible",
        !all,
        "generators are the three pairwise unions",
    );
    Ok(())
}

fn distinguished_elements(s: &mut Suite) -> Result<()> {
    let b1 = Presentation::from_strs(&["u1", "x", "y"], &["y = x u1"])?;
    let b2 = Presentation::from_strs(&["u2", "x", "y"], &["y = x u2"])?;
    let p = coproduct_presentation(&[b1.clone(), b2.clone()], &["x", "y"])?.eliminate("y")?;
    let c = knuth_bendix(&p, KbBudget::default())?;
    let sys = c.system();
    let a = sys.alphabet();
    let w = |t: &str| a.parse_word(t);
    let (u1, u2) = (w("u1")?, w("u2")?);
    s.claim(
        "u1 and u2 stay distinct in the coproduct",
        c.is_complete() && !sys.equal(&u1, &u2),
        format!("complete system of {} rules", sys.rules().len()),
    );
    s.claim(
        "x u1 = x u2 in the coproduct",
        sys.equal(&w("x u1")?, &w("x u2")?),
        format!("both reduce to {}", a.format_word(&sys.reduce(&w("x u2")?))),
    );

    let b3 = Presentation::from_strs(&["x", "y", "w"], &["xw = 1", "wx = 1"])?;
    let c = knuth_bendix(
        &coproduct_presentation(&[b1, b2, b3], &["x", "y"])?,
        KbBudget::default(),
    )?;
    let sys = c.system();
    let a = sys.alphabet();
    let w = |t: &str| a.parse_word(t);
    s.claim(
        "an inverse for x forces u1 = u2",
        c.is_complete() && sys.equal(&w("u1")?, &w("u2")?),
        format!("u1 and u2 reduce to {}", a.format_word(&sys.reduce(&w("u1")?))),
    );
    Ok(())
}

fn monoid_amalgam(s: &mut Suite) -> Result<()> {
    let p = Presentation::from_strs(&["x", "y", "z"], &["xy = 1", "zx = 1"])?;
    let c = knuth_bendix(&p, KbBudget::default())?;
    let sys = c.system();
    let a = sys.alphabet();
    let w = |t: &str| a.parse_word(t);
    s.claim(
        "left and right inverses of x fall together",
        c.is_complete() && sys.equal(&w("y")?, &w("z")?),
        format!("y and z reduce to {}", a.format_word(&sys.reduce(&w("z")?))),
    );
    let xy = sys.reduce(&w("xy")?);
    let zx = sys.reduce(&w("zx")?);
    s.claim(
        "xy and zx reduce to 1",
        xy.is_empty() && zx.is_empty(),
        format!("{} and {}", a.format_word(&xy), a.format_word(&zx)),
    );
    Ok(())
}

fn amalgam_torsion(s: &mut Suite) -> Result<()> {
    let ctx = AmalgamCtx::symmetric_over_stabilizer(3)?;
    let id = ctx.base().identity();
    let mut wrong = Vec::new();
    let mut cosets = 0;
    for e in ctx.elements_up_to(4).into_iter().filter(|e| e.base == id) {
        cosets += 1;
        let scan = coset_torsion_scan(&ctx, &e.reps)?;
        let expect = e.reps.is_empty() || e.reps.len() % 2 == 1;
        if scan.torsion_found != expect {
            wrong.push(e.reps.clone());
        }
    }
    s.claim(
        "torsion exactly in odd-length and base cosets of Sym(3) amalgamated over Stab(3)",
        wrong.is_empty() && cosets > 0,
        format!("{} cosets with strings of length <= 4, {} mismatches", cosets, wrong.len()),
    );
    for n in 2..=5 {
        let survey = stabilizer_coset_survey(n)?;
        let max_order = survey.cosets.iter().map(|c| c.witness_order).max().unwrap_or(0);
        s.claim(
            &format!("every coset of Stab({}) in Sym({}) holds an involution or 1", n, n),
            survey.all_have_witness && max_order <= 2,
            format!("{} cosets", survey.cosets.len()),
        );
    }
    Ok(())
}

fn constants_census(s: &mut Suite) -> Result<()> {
    let census = unialg::prevariety::constants_si_census(3)?;
    s.claim(
        "subdirectly irreducible algebras with three constants",
        census.count() == 4,
        format!("{} algebras", census.count()),
    );
    let n = census.count();
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            if i != j && census.compatible[i][j] {
                ok = false;
            }
        }
    }
    s.claim(
        "distinct constant partitions are incompatible",
        ok,
        format!("{} pairs", n * (n - 1) / 2),
    );
    Ok(())
}
