//! Acceptance run: one PASS/FAIL line per criterion, with the tolerance and
//! runtime limit each one is held to.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use iwalog::block::{closed_form_h, verify_vanishing_pattern, BlockData};
use iwalog::config::ScenarioConfig;
use iwalog::cyclotomic::{cyclo_polynomial, CycloElement};
use iwalog::gen::gen_test_matrices;
use iwalog::growth::{
    coinvariant_rank, enumerate_classes, free_rank_fit, ModulePresentation, StructuredFactor, TorsionFactor,
};
use iwalog::iwasawa::{CharacterPoint, IwasawaPoly, Var};
use iwalog::logmatrix::{enumerate_index_sets, h_tower, DieudonneInput, Place};
use iwalog::padic::{euler_phi_pp, Rational, ResidueRing, Valuation};
use iwalog::runner::{run, Command};

use common::{coinvariant_rank_snf, seeded_poly, IntPoly};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn scenario(name: &str) -> ScenarioConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name);
    ScenarioConfig::load(&path).expect("scenario loads")
}

fn random_block_input(p: u32, g: usize, seed: u64, precision: u32) -> Result<DieudonneInput, String> {
    let ring = ResidueRing::shared(p, precision).map_err(e)?;
    let (cp, cpc) = gen_test_matrices(ring, g, seed, true).map_err(e)?;
    DieudonneInput::from_matrices(g, cp, cpc).map_err(e)
}

fn place_character(p: u32, q: Place, k: u32) -> Result<CharacterPoint, String> {
    match q {
        Place::P => CharacterPoint::primitive(p, k, 0),
        Place::Pc => CharacterPoint::primitive(p, 0, k),
    }
    .map_err(e)
}

fn index_set_counts() -> Outcome {
    let a = enumerate_index_sets(1).map_err(e)?.len();
    let b = enumerate_index_sets(2).map_err(e)?.len();
    ensure(a == 6 && b == 70, format!("got {a} and {b}"))?;
    Ok("g=1: 6, g=2: 70".into())
}

fn closed_form_equivalence() -> Outcome {
    const SEEDS: u64 = 20;
    let mut inputs = 0;
    let mut comparisons = 0;
    for p in [3u32, 5] {
        for g in [1usize, 2] {
            for seed in 0..SEEDS {
                let d = random_block_input(p, g, 1000 * p as u64 + 10 * g as u64 + seed, 64)?;
                let b = BlockData::from_input(&d).map_err(e)?;
                inputs += 1;
                for q in Place::BOTH {
                    let tower = h_tower(&d, q, 5).map_err(e)?;
                    for (i, h) in tower.iter().enumerate() {
                        let k = i as u32 + 1;
                        let direct = h.eval(&place_character(p, q, k)?).map_err(e)?;
                        let closed = closed_form_h(&b, q, k).map_err(e)?;
                        comparisons += 1;
                        ensure(!closed.row_is_zero(0), format!("p={p} g={g} seed={seed} {q} k={k}: top row is zero"))?;
                        ensure(
                            closed.eq_to_precision(&direct),
                            format!("p={p} g={g} seed={seed} {q} k={k} differs"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(format!("{inputs} inputs, {comparisons} matrix comparisons, exact at N=64"))
}

fn vanishing_pattern_g2() -> Outcome {
    let d = random_block_input(3, 2, 31, 64)?;
    let hp = h_tower(&d, Place::P, 4).map_err(e)?;
    let hpc = h_tower(&d, Place::Pc, 4).map_err(e)?;
    let mut minors = 0;
    for r in 1..=4u32 {
        for s in 1..=4u32 {
            let theta = CharacterPoint::primitive(3, r, s).map_err(e)?;
            let rep = verify_vanishing_pattern(2, &hp[r as usize - 1], &hpc[s as usize - 1], &theta, 32)
                .map_err(e)?;
            minors += rep.minors.len();
            ensure(rep.minors.len() == 70, format!("({r},{s}): {} minors", rep.minors.len()))?;
            ensure(rep.passed(), format!("({r},{s}): {:?}", rep.failures))?;
            ensure(rep.all_non_survivors_symbolic(), format!("({r},{s}): non-symbolic zero"))?;
            ensure(
                rep.survivor_valuation.is_finite(),
                format!("({r},{s}): survivor valuation {}", rep.survivor_valuation),
            )?;
        }
    }
    Ok(format!("{minors} minors over 16 cells, 0 failures"))
}

fn lower_half_vanishing() -> Outcome {
    let mut cases = 0;
    for seed in 0..50u64 {
        let g = 1 + (seed % 2) as usize;
        let ring = ResidueRing::shared(3, 32).map_err(e)?;
        let (cp, cpc) = gen_test_matrices(ring, g, 5000 + seed, false).map_err(e)?;
        let d = DieudonneInput::from_matrices(g, cp, cpc).map_err(e)?;
        for q in Place::BOTH {
            for (i, h) in h_tower(&d, q, 3).map_err(e)?.iter().enumerate() {
                let k = i as u32 + 1;
                let m = h.eval(&place_character(3, q, k)?).map_err(e)?;
                for row in g..2 * g {
                    ensure(m.row_is_zero(row), format!("seed={seed} {q} k={k} row {}", row + 1))?;
                }
            }
        }
        cases += 1;
    }
    Ok(format!("{cases}/50 random inputs, levels 1..3 at both primes"))
}

fn coinvariant_oracle() -> Outcome {
    let ring = ResidueRing::shared(3, 40).map_err(e)?;
    let mut checks = 0;
    for seed in 0..10u64 {
        let f: IntPoly = seeded_poly(seed);
        let terms: Vec<(usize, usize, i64)> = f.iter().map(|(&(i, j), &c)| (i, j, c)).collect();
        let poly = IwasawaPoly::from_x_i64(ring.clone(), &terms);
        let m = ModulePresentation::new(ring.clone(), 0, vec![TorsionFactor::Untagged(poly)]).map_err(e)?;
        for n in 0..=2 {
            let ours = coinvariant_rank(&m, n, 30).map_err(e)?.rank as usize;
            let oracle = coinvariant_rank_snf(&f, 3, n);
            ensure(ours == oracle, format!("seed={seed} n={n}: {ours} vs {oracle}"))?;
            checks += 1;
        }
    }
    let tagged = |f: StructuredFactor| {
        ModulePresentation::new(ring.clone(), 0, vec![TorsionFactor::Tagged(vec![f])]).map_err(e)
    };
    let x = coinvariant_rank(&tagged(StructuredFactor::Var(Var::X))?, 1, 30).map_err(e)?.rank;
    let phi = coinvariant_rank(&tagged(StructuredFactor::Cyclo(Var::X, 1))?, 1, 30).map_err(e)?.rank;
    ensure(x == 3 && phi == 6, format!("tagged cases gave {x} and {phi}"))?;
    Ok(format!("{checks} seeded cases agree with Smith form; Lambda/(X) -> 3, Lambda/(Phi_3(1+X)) -> 6"))
}

fn free_rank_asymptotic() -> Outcome {
    let ring = ResidueRing::shared(3, 40).map_err(e)?;
    let mut notes = Vec::new();
    for r in 0..=2u32 {
        let m = ModulePresentation::new(
            ring.clone(),
            r,
            vec![TorsionFactor::Tagged(vec![StructuredFactor::Var(Var::X)])],
        )
        .map_err(e)?;
        let h = free_rank_fit(&m, 4, 30).map_err(e)?;
        ensure(h.fitted_free_rank == r as u128, format!("r={r}: fitted {}", h.fitted_free_rank))?;
        ensure(h.constant == "1", format!("r={r}: C = {}", h.constant))?;
        for (n, res) in h.residuals.iter().enumerate() {
            ensure(*res == 3u128.pow(n as u32), format!("r={r} n={n}: residual {res}"))?;
        }
        notes.push(format!("r={r}: C={}", h.constant));
    }
    Ok(format!("Lambda^r + Lambda/(X), n<=4, residual = p^n; {}", notes.join(", ")))
}

fn class_census() -> Outcome {
    for p in [3u32, 5] {
        for n in 0..=3 {
            let total: u128 = enumerate_classes(p, n, false).map_err(e)?.iter().map(|c| c.size).sum();
            ensure(total == (p as u128).pow(2 * n), format!("p={p} n={n}: {total}"))?;
        }
    }
    let all = enumerate_classes(3, 1, false).map_err(e)?.len();
    let new = enumerate_classes(3, 1, true).map_err(e)?.len();
    ensure(all == 5 && new == 4, format!("p=3 n=1: {all} classes, {new} new"))?;
    Ok("sizes sum to p^(2n) for p in {3,5}, n<=3; p=3, n=1: 5 classes (1+4)".into())
}

fn pipeline() -> Outcome {
    let cfg = scenario("elliptic-block.toml");
    let rep = run(&cfg, Command::MwBound).map_err(e)?;
    let g = rep.details.get("mw_bound").ok_or("no mw_bound detail")?;
    let rows = g["rows"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 7, format!("{} rows", rows.len()))?;
    for r in rows {
        let n = r["n"].as_u64().ok_or("n")? as u32;
        let total = r["total"].as_u64().ok_or("total")? as u128;
        ensure(total == 3u128.pow(n + 1) - 2, format!("n={n}: total {total}"))?;
    }
    let cert = g["certificate"]["value"].as_str().ok_or("no certificate")?;
    ensure(cert == "3", format!("certificate {cert}"))?;
    ensure(rep.exit_code() == 0, format!("exit code {}", rep.exit_code()))?;
    Ok("total_n = 3^(n+1) - 2 for n<=6, certificate 3".into())
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(e)?;
    let mut files = 0;
    for name in ["elliptic-block.toml", "random-g2.toml", "det3.toml"] {
        let cfg = scenario(name);
        let cmds: Vec<Command> = Command::EACH
            .into_iter()
            .chain([Command::All])
            .filter(|c| {
                cfg.growth.is_some() || !matches!(c, Command::HLarge | Command::Growth | Command::MwBound)
            })
            .collect();
        for c in cmds {
            let dirs = [tmp.path().join(format!("{name}-{c}-a")), tmp.path().join(format!("{name}-{c}-b"))];
            for d in &dirs {
                run(&cfg, c).map_err(e)?.emit(d).map_err(e)?;
            }
            let list = |d: &Path| -> Result<Vec<(String, Vec<u8>)>, String> {
                let mut v = Vec::new();
                for ent in std::fs::read_dir(d).map_err(e)? {
                    let ent = ent.map_err(e)?;
                    v.push((ent.file_name().to_string_lossy().into_owned(), std::fs::read(ent.path()).map_err(e)?));
                }
                v.sort();
                Ok(v)
            };
            let (a, b) = (list(&dirs[0])?, list(&dirs[1])?);
            ensure(a == b, format!("{name} {c}: outputs differ"))?;
            files += a.len();
        }
    }
    Ok(format!("{files} report files byte-identical across reruns"))
}

fn valuation_engine() -> Outcome {
    for p in [3u32, 5] {
        let ring = ResidueRing::shared(p, 16).map_err(e)?;
        for n in 1..=4u32 {
            // norm oracle: prod over a in (Z/p^n)^x of (zeta^a - 1) = Phi_{p^n}(1) = p
            let phi_at_one: BigUint = cyclo_polynomial(p, n).map_err(e)?.coeffs.iter().sum();
            ensure(phi_at_one == BigUint::from(p), format!("Phi_{{{p}^{n}}}(1) = {phi_at_one}"))?;
            let m = (p as i64).pow(n);
            let mut norm = CycloElement::one(ring.clone(), n);
            for a in (1..m).filter(|a| a % p as i64 != 0) {
                let conj = CycloElement::zeta_pow(ring.clone(), n, a).sub(&CycloElement::one(ring.clone(), n));
                norm = norm.mul(&conj.map_err(e)?).map_err(e)?;
            }
            let as_int = norm.as_scalar().and_then(|s| s.to_signed_int());
            ensure(as_int == Some(p.into()), format!("p={p} n={n}: norm {norm}"))?;
            let phi = euler_phi_pp(p, n) as i64;
            let v = CycloElement::eps(ring.clone(), n).valuation();
            ensure(
                v == Valuation::Exact(Rational::new(1, phi)),
                format!("p={p} n={n}: val eps = {v}"),
            )?;
        }
    }
    let ring = ResidueRing::shared(3, 16).map_err(e)?;
    let w = CharacterPoint::primitive(3, 2, 0).map_err(e)?;
    let v = IwasawaPoly::cyclo(ring, 1, Var::X).map_err(e)?.eval(&w).map_err(e)?.valuation();
    ensure(v == Valuation::Exact(Rational::new(1, 3)), format!("val Phi_3(zeta_9) = {v}"))?;
    Ok("val eps_n = 1/phi(p^n) for n<=4, p in {3,5}; val Phi_3(zeta_9) = 1/3".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "index-set cardinalities", limit: Some(Duration::from_secs(1)), run: index_set_counts },
        Criterion { id: 2, name: "closed form equals direct evaluation", limit: Some(Duration::from_secs(120)), run: closed_form_equivalence },
        Criterion { id: 3, name: "parity vanishing pattern, g=2, (r,s) in [1,4]^2", limit: Some(Duration::from_secs(300)), run: vanishing_pattern_g2 },
        Criterion { id: 4, name: "lower-half vanishing for random input", limit: None, run: lower_half_vanishing },
        Criterion { id: 5, name: "coinvariant rank against Smith normal form", limit: None, run: coinvariant_oracle },
        Criterion { id: 6, name: "free rank fit r p^(2n) + O(p^n)", limit: None, run: free_rank_asymptotic },
        Criterion { id: 7, name: "character class census", limit: None, run: class_census },
        Criterion { id: 8, name: "end-to-end rank bound pipeline", limit: Some(Duration::from_secs(30)), run: pipeline },
        Criterion { id: 9, name: "byte-identical reruns", limit: None, run: determinism },
        Criterion { id: 10, name: "valuation engine", limit: None, run: valuation_engine },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t0 = Instant::now();
        let outcome = (c.run)();
        let dt = t0.elapsed();
        let limit = c.limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        let (ok, msg) = match outcome {
            Ok(m) => match c.limit {
                Some(l) if dt > l => (false, format!("{m}; too slow")),
                _ => (true, m),
            },
            Err(m) => (false, m),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} [{:.2}s{}] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            dt.as_secs_f64(),
            limit,
            msg
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
