use std::path::{Path, PathBuf};

use serde_json::json;
use unialg::algcore::{io, is_subdirectly_irreducible, FiniteAlgebra};
use unialg::amalgam::{coset_torsion_scan, AmalgamCtx, AmalgamElement, Letter};
use unialg::homsearch::{are_isomorphic, Separation};
use unialg::prevariety::{
    check_amalgamation_bounded, coproduct, free_algebra, is_comfortable, is_independent,
    is_p_subdirectly_irreducible, minimum_compatible_cover, quasi_identity_holds,
    AmalgamationOptions, PrevarietyCtx, QuasiIdentity,
};
use unialg::srs::{knuth_bendix, Completion, Presentation};
use unialg::{Error, Result};

use crate::report::{Outcome, Report};
use crate::{paperlab, AmalgamSource, BudgetArgs, Cli, Command, Gens};

fn load(path: &Path) -> Result<FiniteAlgebra> {
    io::read_file(path)
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<FiniteAlgebra>> {
    paths.iter().map(|p| load(p)).collect()
}

fn prevariety(gens: &Gens, budgets: &BudgetArgs) -> Result<PrevarietyCtx> {
    Ok(PrevarietyCtx::new(load_all(&gens.gens)?)?.with_budgets(budgets.budgets()))
}

fn write_out(path: &Option<PathBuf>, alg: &FiniteAlgebra, r: &mut Report) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, io::to_json(alg) + "\n")
            .map_err(|e| Error::InvalidArgument(format!("{}: {}", p.display(), e)))?;
        r.line(format!("written to {}", p.display()));
    }
    Ok(())
}

/// Whether a single-operation unary algebra is a cycle on all its elements.
fn is_cycle(alg: &FiniteAlgebra) -> Result<bool> {
    if alg.signature().len() != 1 || alg.signature().arity(0) != 1 || alg.is_empty() {
        return Ok(false);
    }
    let c = FiniteAlgebra::cyclic_unary(alg.size())?;
    are_isomorphic(alg, &c)
}

fn parse_subset(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("`{}` is not an element index", t)))
        })
        .collect()
}

fn amalgam_ctx(src: &AmalgamSource) -> Result<AmalgamCtx> {
    match &src.ctx {
        Some(p) => AmalgamCtx::read_file(p),
        None => AmalgamCtx::symmetric_over_stabilizer(src.sym),
    }
}

fn parse_letters(items: &[&str]) -> Result<Vec<Letter>> {
    items
        .iter()
        .map(|s| {
            let (f, e) = s
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("letter `{}` is not F:E", s)))?;
            let f: usize = f
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor in `{}`", s)))?;
            let e: usize = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element in `{}`", s)))?;
            Ok((f, e))
        })
        .collect()
}

pub fn format_amalgam(e: &AmalgamElement) -> String {
    let mut parts: Vec<String> = e.reps.iter().map(|(f, r)| format!("{}:{}", f, r)).collect();
    parts.push(format!("b{}", e.base));
    parts.join(" ")
}

fn amalgam_json(e: &AmalgamElement) -> serde_json::Value {
    json!({
        "reps": e.reps.iter().map(|&(f, r)| json!([f, r])).collect::<Vec<_>>(),
        "base": e.base,
    })
}

pub fn run(cli: &Cli) -> Result<Report> {
    let b = &cli.budgets;
    match &cli.command {
        Command::Free {
            gens,
            n,
            compare,
            out,
        } => {
            let ctx = prevariety(gens, b)?;
            let f = free_algebra(&ctx, *n)?;
            let mut r = Report::new(Outcome::Done);
            r.line(format!("free algebra on {} generators: {} elements", n, f.algebra.size()));
            r.line(format!("generators: {:?}", f.generators));
            r.line(format!("index size: {}", f.index.len()));
            let cycle = is_cycle(&f.algebra)?;
            if cycle {
                r.line(format!("isomorphic to C_{}", f.algebra.size()));
            }
            r.set("size", f.algebra.size());
            r.set("generators", f.generators.clone());
            r.set("isomorphic_to_cycle", cycle);
            if let Some(p) = compare {
                let other = load(p)?;
                let iso = are_isomorphic(&f.algebra, &other)?;
                r.line(format!("isomorphic to {}: {}", p.display(), iso));
                r.set("isomorphic_to_compare", iso);
            }
            write_out(out, &f.algebra, &mut r)?;
            Ok(r)
        }
        Command::Coproduct { gens, factors, out } => {
            let ctx = prevariety(gens, b)?;
            let c = coproduct(&ctx, &load_all(factors)?)?;
            let inj: Vec<bool> = c.coprojections.iter().map(|h| h.is_injective()).collect();
            let mut r = Report::new(Outcome::Done);
            r.line(format!("coproduct: {} elements", c.algebra.size()));
            r.line(format!("index size: {}", c.index.len()));
            for (i, h) in c.coprojections.iter().enumerate() {
                r.line(format!("coprojection {}: {:?} injective={}", i, h.map(), inj[i]));
            }
            r.set("size", c.algebra.size());
            r.set("injective", inj);
            r.set(
                "coprojections",
                c.coprojections.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>(),
            );
            write_out(out, &c.algebra, &mut r)?;
            Ok(r)
        }
        Command::Compatible { gens, factors } => {
            let ctx = prevariety(gens, b)?;
            let c = coproduct(&ctx, &load_all(factors)?)?;
            let bad: Vec<usize> = (0..c.coprojections.len())
                .filter(|&i| !c.coprojections[i].is_injective())
                .collect();
            let mut r = Report::new(Outcome::from_bool(bad.is_empty()));
            r.line(format!("compatible: {}", bad.is_empty()));
            if !bad.is_empty() {
                r.line(format!(
                    "coprojections not one-to-one: {:?} (coproduct has {} elements)",
                    bad,
                    c.algebra.size()
                ));
            }
            r.set("compatible", bad.is_empty());
            r.set("non_injective", bad);
            r.set("coproduct_size", c.algebra.size());
            Ok(r)
        }
        Command::Comfortable { gens, a, b: bb } => {
            let ctx = prevariety(gens, b)?;
            let v = is_comfortable(&ctx, &load(a)?, &load(bb)?)?;
            let mut r = Report::new(Outcome::from_bool(v));
            r.line(format!("comfortable: {}", v));
            r.set("comfortable", v);
            Ok(r)
        }
        Command::Independent {
            gens,
            ambient,
            subsets,
        } => {
            let ctx = prevariety(gens, b)?;
            let subs = subsets
                .iter()
                .map(|s| parse_subset(s))
                .collect::<Result<Vec<_>>>()?;
            let v = is_independent(&ctx, &load(ambient)?, &subs)?;
            let mut r = Report::new(Outcome::from_bool(v));
            r.line(format!("independent: {}", v));
            r.set("independent", v);
            Ok(r)
        }
        Command::Si { file } => {
            let a = load(file)?;
            let (si, mono) = is_subdirectly_irreducible(&a, b.budgets().congruence_bound)?;
            let mut r = Report::new(Outcome::from_bool(si));
            r.line(format!("subdirectly irreducible: {}", si));
            if let Some(m) = &mono {
                r.line(format!("monolith blocks: {:?}", m.blocks()));
                r.set("monolith", m.blocks());
            }
            r.set("subdirectly_irreducible", si);
            Ok(r)
        }
        Command::RelSi { gens, file } => {
            let ctx = prevariety(gens, b)?;
            let (si, mono) = is_p_subdirectly_irreducible(&ctx, &load(file)?)?;
            let mut r = Report::new(Outcome::from_bool(si));
            r.line(format!("relatively subdirectly irreducible: {}", si));
            if let Some(m) = &mono {
                r.line(format!("monolith blocks: {:?}", m.blocks()));
                r.set("monolith", m.blocks());
            }
            r.set("subdirectly_irreducible", si);
            Ok(r)
        }
        Command::Member { gens, file } => {
            let ctx = prevariety(gens, b)?;
            let a = load(file)?;
            let mut r;
            match ctx.separation(&a)? {
                Separation::Separated(homs) => {
                    r = Report::new(Outcome::Done);
                    r.line("member: true");
                    r.line(format!("separating homomorphisms: {}", homs.len()));
                    for h in &homs {
                        r.line(format!("  into generator {}: {:?}", h.generator, h.map));
                    }
                    r.set("member", true);
                    r.set(
                        "separating",
                        homs.iter()
                            .map(|h| json!({"generator": h.generator, "map": h.map}))
                            .collect::<Vec<_>>(),
                    );
                }
                Separation::Unseparated(x, y) => {
                    r = Report::new(Outcome::Refuted);
                    r.line("member: false");
                    r.line(format!("elements {} and {} cannot be separated", x, y));
                    r.set("member", false);
                    r.set("unseparated", vec![x, y]);
                }
            }
            Ok(r)
        }
        Command::Cover { gens, factors } => {
            let ctx = prevariety(gens, b)?;
            let blocks = minimum_compatible_cover(&ctx, &load_all(factors)?)?;
            let mut r = Report::new(Outcome::Done);
            r.line(format!("blocks: {}", blocks.len()));
            for bl in &blocks {
                r.line(format!("  {:?}", bl));
            }
            r.set("blocks", blocks);
            Ok(r)
        }
        Command::Qid { file, formula } => {
            let a = load(file)?;
            let q = QuasiIdentity::parse(formula, a.signature())?;
            let v = quasi_identity_holds(&a, &q)?;
            let mut r = Report::new(Outcome::from_bool(v));
            r.line(format!("{}: {}", q, if v { "holds" } else { "fails" }));
            r.set("quasi_identity", q.to_string());
            r.set("holds", v);
            Ok(r)
        }
        Command::AmalgCheck {
            gens,
            k,
            include_empty_base,
        } => {
            let ctx = prevariety(gens, b)?;
            let rep = check_amalgamation_bounded(
                &ctx,
                *k,
                AmalgamationOptions {
                    include_empty_base: *include_empty_base,
                },
            )?;
            let mut r = Report::new(Outcome::from_bool(rep.holds));
            r.line(format!(
                "amalgamation on members of size <= {}: {}",
                k, rep.holds
            ));
            r.line(format!("members: {}, squares: {}", rep.members, rep.squares));
            r.set("holds", rep.holds);
            r.set("members", rep.members);
            r.set("squares", rep.squares);
            if let Some(w) = &rep.counterexample {
                r.line(format!(
                    "counterexample: base of size {}, f = {:?} into size {}, g = {:?} into size {}",
                    w.a.size(),
                    w.f,
                    w.b.size(),
                    w.g,
                    w.c.size()
                ));
                r.set(
                    "counterexample",
                    json!({
                        "base": serde_json::from_str::<serde_json::Value>(&io::to_json(&w.a))?,
                        "b": serde_json::from_str::<serde_json::Value>(&io::to_json(&w.b))?,
                        "c": serde_json::from_str::<serde_json::Value>(&io::to_json(&w.c))?,
                        "f": w.f,
                        "g": w.g,
                    }),
                );
            }
            Ok(r)
        }
        Command::Kb { file } => {
            let p = read_presentation(file)?;
            let c = knuth_bendix(&p, b.kb())?;
            let s = c.system();
            let mut r = Report::new(match &c {
                Completion::Complete(_) => Outcome::Done,
                Completion::Exhausted { .. } => Outcome::Budget,
            });
            if let Completion::Exhausted { reason, .. } = &c {
                r.line(format!("completion stopped: {}; partial system follows", reason));
                r.set("reason", reason.clone());
            }
            r.set("complete", c.is_complete());
            let a = s.alphabet();
            let rules: Vec<String> = s
                .rules()
                .iter()
                .map(|x| format!("{} -> {}", a.format_word(&x.lhs), a.format_word(&x.rhs)))
                .collect();
            for l in &rules {
                r.line(l.clone());
            }
            r.set("rules", rules);
            Ok(r)
        }
        Command::Reduce { file, words } => {
            let p = read_presentation(file)?;
            let c = knuth_bendix(&p, b.kb())?;
            let s = c.system();
            let mut r = Report::new(if c.is_complete() {
                Outcome::Done
            } else {
                Outcome::Budget
            });
            if !c.is_complete() {
                r.line("completion stopped early; normal forms may not be unique");
            }
            let mut out = Vec::new();
            for w in words {
                let nf = s.alphabet().format_word(&s.reduce(&s.alphabet().parse_word(w)?));
                r.line(format!("{} -> {}", w, nf));
                out.push(json!({"word": w, "normal_form": nf}));
            }
            r.set("normal_forms", out);
            Ok(r)
        }
        Command::AmalgamNf { source, letters } => {
            let ctx = amalgam_ctx(source)?;
            let items: Vec<&str> = letters.iter().map(String::as_str).collect();
            let e = ctx.normal_form(&parse_letters(&items)?)?;
            let mut r = Report::new(Outcome::Done);
            r.line(format!("normal form: {}", format_amalgam(&e)));
            r.line(format!("string length: {}", e.len()));
            r.line(format!("torsion: {}", ctx.is_torsion(&e)));
            r.set("normal_form", amalgam_json(&e));
            r.set("torsion", ctx.is_torsion(&e));
            Ok(r)
        }
        Command::AmalgamScan {
            source,
            max_len,
            sigma,
        } => {
            let ctx = amalgam_ctx(source)?;
            let strings: Vec<Vec<Letter>> = match sigma {
                Some(s) => {
                    let items: Vec<&str> = s.split_whitespace().collect();
                    vec![parse_letters(&items)?]
                }
                None => {
                    let id = ctx.base().identity();
                    ctx.elements_up_to(*max_len)
                        .into_iter()
                        .filter(|e| e.base == id)
                        .map(|e| e.reps)
                        .collect()
                }
            };
            let mut r = Report::new(Outcome::Done);
            let mut rows = Vec::new();
            for s in &strings {
                let scan = coset_torsion_scan(&ctx, s)?;
                let label = if s.is_empty() {
                    "B".to_string()
                } else {
                    s.iter().map(|(f, e)| format!("{}:{}", f, e)).collect::<Vec<_>>().join(" ")
                };
                r.line(format!(
                    "coset {} (length {}): torsion {}",
                    label,
                    s.len(),
                    if scan.torsion_found { "present" } else { "absent" }
                ));
                rows.push(json!({
                    "string": s.iter().map(|&(f, e)| json!([f, e])).collect::<Vec<_>>(),
                    "torsion": scan.torsion_found,
                    "witness": scan.witness.as_ref().map(amalgam_json),
                }));
            }
            r.set("cosets", rows);
            Ok(r)
        }
        Command::Paperlab { suite } => paperlab::run(suite),
    }
}

fn read_presentation(path: &Path) -> Result<Presentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
    Presentation::parse(&text)
}
