//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use vhcx::certificates::{amalgam_ranks, nst_check, Verdict};
use vhcx::complex::{closed_letters, Side};
use vhcx::corpus;
use vhcx::coset::{enumerate, normal_closure_index, quotient_structure, EnumOptions, Strategy};
use vhcx::fp::{abelianization, index4_hom, presentation_from_complex, smith_normal_form, FreeLetter, Presentation, Word};
use vhcx::group::{brute_simplicity, factorial, is_whitelisted_nonabelian_simple, recognize, BruteVerdict, PermGroup, Recognition, DEFAULT_SIMPLICITY_BOUND};
use vhcx::local::local_group;
use vhcx::rs::{is_perfect, parity_kernel_table, subgroup_presentation, tietze_simplify, TietzeLimits};

use common::*;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn orbit_stabilizer(g: &PermGroup) -> Result<(), String> {
    for p in [0, g.degree() - 1] {
        let lhs = g.order();
        let rhs = BigUint::from(g.orbit(p).len()) * g.point_stabilizer(p).order();
        ensure!(lhs == rhs, "orbit-stabilizer fails at point {p}: {lhs} != {rhs}");
    }
    Ok(())
}

fn lambda_local_groups() -> Check {
    let l = corpus::lambda();
    let h1 = local_group(&l, Side::Horizontal, 1).map_err(|e| e.to_string())?;
    let v1 = local_group(&l, Side::Vertical, 1).map_err(|e| e.to_string())?;
    for g in [&h1, &v1] {
        ensure!(g.order() == big(360), "order {}", g.order());
        ensure!(recognize(&g.group) == Recognition::Alt { degree: 6 }, "not A6");
    }
    let v2 = local_group(&l, Side::Vertical, 2).map_err(|e| e.to_string())?;
    let target = big(360) * big(60).pow(6);
    ensure!(v2.order() == target, "P_v^(2) order {} != {target}", v2.order());
    Ok(format!("|P_h^(1)| = |P_v^(1)| = 360 (A6), |P_v^(2)| = {}", v2.order()))
}

fn lambda_nst() -> Check {
    let l = corpus::lambda();
    for side in [Side::Horizontal, Side::Vertical] {
        let g = local_group(&l, side, 1).map_err(|e| e.to_string())?.group;
        let stab = g.point_stabilizer(0);
        ensure!(stab.order() == big(60), "{side:?} stabilizer order {}", stab.order());
        ensure!(is_whitelisted_nonabelian_simple(&stab, DEFAULT_SIMPLICITY_BOUND), "{side:?} stabilizer not simple");
        // independent of recognition: enumerate the 60 elements
        ensure!(brute_simplicity(&stab, 1000) == BruteVerdict::Simple, "{side:?} brute force disagrees");
    }
    let nst = nst_check(&l, DEFAULT_SIMPLICITY_BOUND).map_err(|e| e.to_string())?;
    ensure!(nst.verdict == Verdict::Pass, "nst_check verdict {:?}", nst.verdict);
    Ok("stabilizers of order 60 simple on both sides, nst_check pass".into())
}

fn sigma_local_groups() -> Check {
    let s = corpus::sigma();
    let h1 = local_group(&s, Side::Horizontal, 1).map_err(|e| e.to_string())?.group;
    ensure!(h1.order() == big(95040), "|P_h^(1)| = {}", h1.order());
    ensure!(recognize(&h1) == Recognition::M12, "P_h^(1) not M12");
    ensure!(h1.is_k_transitive(5), "P_h^(1) not 5-transitive");
    let stab = h1.point_stabilizer(0);
    ensure!(stab.order() == big(7920), "stabilizer order {}", stab.order());
    ensure!(recognize(&stab) == Recognition::M11, "stabilizer not M11");
    let v1 = local_group(&s, Side::Vertical, 1).map_err(|e| e.to_string())?.group;
    ensure!(v1.order() == big(20160), "|P_v^(1)| = {}", v1.order());
    ensure!(recognize(&v1) == Recognition::Alt { degree: 8 }, "P_v^(1) not A8");
    let v2 = local_group(&s, Side::Vertical, 2).map_err(|e| e.to_string())?;
    let target = big(20160) * big(2520).pow(8);
    ensure!(v2.order() == target, "|P_v^(2)| = {} != {target}", v2.order());
    Ok(format!("M12 (5-transitive) / M11, A8, |P_v^(2)| = {}", v2.order()))
}

fn delta_embedding() -> Check {
    let s = corpus::sigma();
    let sub = s
        .check_subcomplex(
            &closed_letters(Side::Horizontal, 1..=4),
            &closed_letters(Side::Vertical, 1..=3),
        )
        .map_err(|e| e.to_string())?;
    ensure!(sub.ok, "subcomplex fails the link condition");
    let delta = corpus::delta();
    ensure!(sub.sub.squares == delta.squares, "recovered squares differ from delta.vh");
    ensure!(sub.sub.squares.len() == 12, "{} squares", sub.sub.squares.len());
    Ok("12 canonical squares recovered, link condition holds".into())
}

fn coset_enumeration() -> Check {
    let p = presentation_from_complex(&corpus::sigma());
    let w = p.parse_word(corpus::DELTA_RESIDUAL_WORD).map_err(|e| e.to_string())?;
    let k = normal_closure_index(&p, &w, EnumOptions::default()).map_err(|e| e.to_string())?;
    ensure!(k == 4, "index {k}");
    let t = enumerate(&p.with_relator(w), &[], EnumOptions::default()).map_err(|e| e.to_string())?;
    let q = quotient_structure(&t).map_err(|e| e.to_string())?;
    ensure!(q.abelian && q.satisfies_group_axioms(), "quotient not an abelian group");
    let inv = q.invariants.ok_or("no invariants")?;
    ensure!(inv.free_rank == 0 && inv.torsion_u64() == [2, 2], "invariants {inv}");
    Ok(format!("index 4, quotient {inv} (max live cosets {})", t.stats.max_live))
}

fn abelianizations() -> Check {
    let d = abelianization(&presentation_from_complex(&corpus::delta()));
    ensure!(d.free_rank == 3 && d.torsion.is_empty(), "Δ^ab = {d}");
    let s = abelianization(&presentation_from_complex(&corpus::sigma()));
    ensure!(s.free_rank == 0 && s.torsion_u64() == [2, 2], "Σ^ab = {s}");
    Ok(format!("Δ^ab = {d}, Σ^ab = {s}"))
}

fn reidemeister_schreier() -> Check {
    let p = presentation_from_complex(&corpus::sigma());
    let hom = index4_hom(&p).map_err(|e| e.to_string())?;
    let sub = subgroup_presentation(&p, &parity_kernel_table(&hom));
    let raw = &sub.presentation;
    ensure!(
        (raw.generator_count(), raw.relator_count()) == (37, 96),
        "raw {}/{}",
        raw.generator_count(),
        raw.relator_count()
    );
    let out = tietze_simplify(raw, TietzeLimits::default());
    let q = &out.presentation;
    let (g, r) = (q.generator_count(), q.relator_count());
    ensure!(r as i64 - g as i64 == 59, "r - g = {}", r as i64 - g as i64);
    ensure!(g <= 10, "{g} generators");
    ensure!(is_perfect(q), "not perfect");
    Ok(format!("37/96 raw; simplified to {g} generators, {r} relators, length {}", q.total_length()))
}

fn amalgams() -> Check {
    let cases = [
        ((6, 4), (7, 73), (11, 81)),
        ((175, 109), (217, 75601), (349, 75865)),
        ((3960, 24), (47, 364321), (7919, 380065)),
    ];
    for ((m, n), h, v) in cases {
        let r = amalgam_ranks(m, n).map_err(|e| e.to_string())?;
        ensure!(
            (r.horizontal_cut.vertex_rank, r.horizontal_cut.edge_rank) == h,
            "({m},{n}) first splitting {:?}",
            r.horizontal_cut
        );
        ensure!(
            (r.vertical_cut.vertex_rank, r.vertical_cut.edge_rank) == v,
            "({m},{n}) second splitting {:?}",
            r.vertical_cut
        );
    }
    for m in 1..=50u64 {
        for n in 1..=50u64 {
            let r = amalgam_ranks(m, n).map_err(|e| e.to_string())?;
            let chi = 4 * (1 - (m as i64 + n as i64) + (m * n) as i64);
            for a in [r.horizontal_cut, r.vertical_cut] {
                let lhs = 2 * (1 - a.vertex_rank as i64) - (1 - a.edge_rank as i64);
                ensure!(lhs == chi, "Euler identity fails at ({m},{n})");
            }
        }
    }
    Ok("three instances match; Euler identity holds for 1 <= m,n <= 50".into())
}

fn full_certificate() -> Check {
    let path = corpus_path("sigma.vh");
    let args = [
        "vhcx".to_string(),
        "simple-cert".into(),
        path.display().to_string(),
        "--word".into(),
        corpus::DELTA_RESIDUAL_WORD.into(),
        "--assume-nrf".into(),
        "--json".into(),
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = vhcx::cli::run(args, &mut out, &mut err);
    ensure!(code == 0, "exit code {code}: {}", String::from_utf8_lossy(&err));
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let json: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure!(
        json["conclusion"] == "Γ* = ⟨⟨w⟩⟩ = Γ₀, finitely presented torsion-free simple, index 4",
        "conclusion {}",
        json["conclusion"]
    );
    let assumptions = json["assumptions"].as_array().ok_or("no assumptions")?;
    ensure!(assumptions.len() == 1, "{} assumptions", assumptions.len());
    ensure!(
        assumptions[0]["statement"].as_str().is_some_and(|s| s.contains("Δ*"))
            && assumptions[0]["citation"].as_str().is_some_and(|s| s.contains("Wise")),
        "assumption {}",
        assumptions[0]
    );
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/sigma_cert.json"))
        .map_err(|e| e.to_string())?;
    ensure!(text == golden, "output differs from golden file");
    Ok("conclusion and single assumption as expected; golden JSON matches".into())
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut groups_checked = 0;

    // BSGS order against breadth-first enumeration
    for _ in 0..200 {
        let d = rng.gen_range(1..=8);
        let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_perm(&mut rng, d)).collect();
        let g = PermGroup::new(d, gens.clone()).map_err(|e| e.to_string())?;
        let brute = brute_order(d, &gens);
        ensure!(g.order() == BigUint::from(brute), "BSGS order {} != brute {brute}", g.order());
        orbit_stabilizer(&g)?;
        groups_checked += 1;
    }

    // Todd–Coxeter against faithful permutation representations
    let small = small_groups();
    for (name, p, perms) in &small {
        for r in &p.relators {
            ensure!(evaluate(r, perms).is_identity(), "{name}: relator fails on its representation");
        }
        let brute = brute_order(perms[0].degree(), perms);
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let t = enumerate(p, &[], EnumOptions { cap: 10_000, strategy }).map_err(|e| e.to_string())?;
            ensure!(t.index() == brute, "{name} {strategy}: index {} != {brute}", t.index());
        }
    }

    // Smith normal form
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m = random_matrix(&mut rng, r, c, 9);
        check_smith(&m, &smith_normal_form(&m, true))?;
    }

    // r - g after every Tietze move
    let mut moves = 0;
    let mut presentations: Vec<Presentation> = Vec::new();
    for c in [corpus::sigma(), corpus::lambda(), corpus::delta()] {
        let p = presentation_from_complex(&c);
        let hom = index4_hom(&p).map_err(|e| e.to_string())?;
        presentations.push(subgroup_presentation(&p, &parity_kernel_table(&hom)).presentation);
        presentations.push(p);
    }
    for _ in 0..50 {
        let g = rng.gen_range(1..=5);
        let rels: Vec<Word> = (0..rng.gen_range(0..=6))
            .map(|_| Word::new((0..rng.gen_range(1..=8)).map(|_| FreeLetter::new(rng.gen_range(0..g), rng.gen_bool(0.5)))))
            .collect();
        presentations.push(Presentation::new((0..g).map(|i| format!("x{i}")).collect(), rels));
    }
    for p in &presentations {
        let deficiency = p.relator_count() as i64 - p.generator_count() as i64;
        let before = abelianization(p);
        let out = tietze_simplify(p, TietzeLimits::default());
        for mv in &out.moves {
            ensure!(mv.relators as i64 - mv.generators as i64 == deficiency, "move on {} broke r - g", mv.eliminated);
        }
        ensure!(abelianization(&out.presentation) == before, "abelianization changed");
        moves += out.moves.len();
    }

    // orbit-stabilizer on the corpus local groups
    for c in [corpus::lambda(), corpus::sigma(), corpus::delta()] {
        for side in [Side::Horizontal, Side::Vertical] {
            for depth in [1, 2] {
                let g = local_group(&c, side, depth).map_err(|e| e.to_string())?;
                orbit_stabilizer(&g.group)?;
                groups_checked += 1;
            }
        }
    }
    ensure!(factorial(5) == big(120), "factorial");
    Ok(format!(
        "200 BSGS orders, {} Todd–Coxeter presentations, 500 SNFs, {moves} Tietze moves, {groups_checked} orbit-stabilizer groups",
        small.len()
    ))
}

fn main() {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 10] = [
        ("Λ local groups", 1, lambda_local_groups),
        ("Λ normal subgroup theorem hypotheses", 1, lambda_nst),
        ("Σ local groups", 5, sigma_local_groups),
        ("Δ embeds in Σ", 1, delta_embedding),
        ("coset enumeration of Σ / <<w>>", 60, coset_enumeration),
        ("abelianizations of Δ and Σ", 1, abelianizations),
        ("Reidemeister–Schreier and Tietze for Σ₀", 30, reidemeister_schreier),
        ("amalgam ranks", 1, amalgams),
        ("full simplicity certificate", 90, full_certificate),
        ("property suites", 600, property_suites),
    ];
    let mut failures = 0;
    for (i, (title, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.2?}, limit {limit} s")),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {title} [{elapsed:.2?}]: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
