//! End-to-end acceptance sweep: one test per published claim, each
//! printing a single PASS/FAIL line.  Expected values come from closed
//! forms restated here rather than from the code under test.

use std::collections::BTreeMap;
use std::time::Instant;

use singcat::ainfty::{algebra_a, stasheff_defect, transfer, AElem, AGen};
use singcat::apps::{params_from_brauer_tree, params_from_group, params_from_hecke, summarize};
use singcat::arquiver::{
    build_bar_quiver, build_stable_quiver, check_duality, graded_end_dims, match_oracle,
    mesh_hom_matrix, orbit_oracle, wrap_map,
};
use singcat::dga::hopf::hopf_check;
use singcat::dga::packed::{d_square_sweep, PackedMode};
use singcat::dga::{build_q, build_r, Element, Monomial};
use singcat::extcalc::{
    default_hom_steps, default_window, end_report, ext_dims, fold_degree, invert_tau,
    presentation_dims,
};
use singcat::{BiDegree, FieldSpec, ParamSet, Scalar};

fn rat() -> FieldSpec {
    FieldSpec::Rationals
}

fn sweep() -> Vec<ParamSet> {
    [
        (1, 1, 3, 2),
        (2, 1, 2, 3),
        (1, 1, 4, 3),
        (3, 2, 5, 7),
        (4, 3, 4, 5),
        (6, 5, 6, 7),
    ]
    .into_iter()
    .map(|(a, b, h, ell)| ParamSet::new(a, b, h, ell).unwrap())
    .collect()
}

fn report(name: &str, failures: &[String]) {
    println!(
        "criterion {name}: {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "criterion {name}: {failures:#?}");
}

/// Homology of the truncated algebra, restated: one class for every power
/// of the central generator and one for that power times the bottom odd
/// class.  For h = 2 the same table is the basis of k[t,x]/(x^2 + t^l).
fn closed_form_homology(p: &ParamSet, window: i64) -> BTreeMap<BiDegree, usize> {
    let mut out = BTreeMap::new();
    let mut s = 0;
    while p.h * s <= window {
        out.insert(BiDegree::new(2 * p.b * s, p.h * s), 1);
        s += 1;
    }
    let mut s = 0;
    while p.h * s + p.ell <= window {
        out.insert(
            BiDegree::new(2 * p.b * s + 2 * p.a - 1, p.h * s + p.ell),
            1,
        );
        s += 1;
    }
    out
}

#[test]
fn criterion_01_differential_squares_to_zero() {
    let mut failures = Vec::new();
    let start = Instant::now();
    for p in sweep() {
        // Packed route: every standard word with letter sum <= 4h, which
        // covers every standard monomial of internal degree <= 4hl up to
        // the central multiples handled by linearity.
        let packed = d_square_sweep(PackedMode::Truncated { h: p.h }, 4 * p.h).unwrap();
        if !packed.passed() {
            failures.push(format!("{p}: {} packed violations", packed.violations));
        }
        // Element route on the small parameters, central multiples included.
        if p.h * p.ell <= 12 {
            let alg = build_q(p, rat());
            for m in alg.standard_monomials(4 * p.h * p.ell) {
                let x = Element::from_monomial(alg.field, m, alg.field.one());
                if !alg.diff(&alg.diff(&x).unwrap()).unwrap().is_zero() {
                    failures.push(format!("{p}: d^2 != 0 on {x}"));
                }
            }
        }
    }
    let free = d_square_sweep(PackedMode::Free { cap: 8 }, 8).unwrap();
    if !free.passed() {
        failures.push(format!("free algebra: {} violations", free.violations));
    }
    let secs = start.elapsed().as_secs();
    if secs >= 120 {
        failures.push(format!("runtime {secs}s is beyond the seconds-scale budget"));
    }
    report("01 d-squared", &failures);
}

#[test]
fn criterion_02_homotopy_identity_and_homology() {
    let mut failures = Vec::new();
    for p in sweep() {
        let alg = build_q(p, rat());
        let window = 2 * p.h * p.ell;
        for m in alg.standard_monomials(window) {
            let x = Element::from_monomial(alg.field, m, alg.field.one());
            let lhs = alg
                .delta(&alg.diff(&x).unwrap())
                .unwrap()
                .add(&alg.diff(&alg.delta(&x).unwrap()).unwrap());
            let rhs = x.sub(&alg.proj(&x));
            if lhs != rhs {
                failures.push(format!("{p}: homotopy identity fails on {x}"));
                break;
            }
        }
        let dims = alg.homology_dims(window).unwrap();
        if dims != closed_form_homology(&p, window) {
            failures.push(format!("{p}: homology table differs from the closed form"));
        }
        if p.h == 2 {
            // The h = 2 homology ring satisfies x^2 = -t^l on the nose.
            let xi = Element::from_monomial(alg.field, Monomial::xi(1), alg.field.one());
            let got = alg.mul(&xi, &xi).unwrap();
            let want = Element::from_monomial(
                alg.field,
                Monomial::tau_pow(p.ell),
                Scalar::from_i64(-1, alg.field),
            );
            if got != want {
                failures.push(format!("{p}: odd generator squares to {got}, not -t^l"));
            }
        }
    }
    report("02 homotopy-and-homology", &failures);
}

#[test]
fn criterion_03_hopf_axioms() {
    let mut failures = Vec::new();
    for p in sweep() {
        let r = build_r(p.a, 8, rat()).unwrap();
        let rep = hopf_check(&r, 8).unwrap();
        if !rep.passed() {
            failures.push(format!("a = {}: {:?}", p.a, rep.violations));
        }
        if rep.checked <= 10 {
            failures.push(format!("a = {}: window too small, {} checked", p.a, rep.checked));
        }
    }
    report("03 hopf", &failures);
}

#[test]
fn criterion_04_homotopy_transfer() {
    let mut failures = Vec::new();
    for (a, b, h, ell, window) in [(1, 1, 3, 2, 14), (1, 1, 4, 3, 19)] {
        let p = ParamSet::new(a, b, h, ell).unwrap();
        let start = Instant::now();
        let q = build_q(p, rat());
        let t = transfer(&q, (p.h + 2) as usize, window).unwrap();
        if !t.ops.keys().all(|k| k.len() == 2 || k.len() as i64 >= p.h) {
            failures.push(format!("{p}: nonzero operation at an arity strictly between 2 and h"));
        }
        if t.global_sign.abs() != 1 {
            failures.push(format!("{p}: global sign {} is not a sign", t.global_sign));
        }
        // Bare top entry: (-1)^(h(h-1)/2) t^l, up to the one recorded sign.
        let bare = vec![AGen::odd(0); p.h as usize];
        let parity = if (p.h * (p.h - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let mut want = AElem::zero(rat());
        want.add_term(
            AGen::even(p.ell),
            Scalar::from_i64(parity * t.global_sign, rat()),
        );
        if t.ops.get(&bare) != Some(&want) {
            failures.push(format!("{p}: bare top entry is {:?}", t.ops.get(&bare)));
        }
        if !t.compare(&algebra_a(&p, rat())).clean() {
            failures.push(format!("{p}: transferred table differs from the reference"));
        }
        if !stasheff_defect(&t, (p.h + 2) as usize, window).is_empty() {
            failures.push(format!("{p}: transferred structure violates an identity"));
        }
        let secs = start.elapsed().as_secs();
        if secs >= 60 {
            failures.push(format!("{p}: transfer took {secs}s, budget one minute"));
        }
    }
    report("04 transfer", &failures);
}

#[test]
fn criterion_05_ext_tables_match_presentations() {
    let mut failures = Vec::new();
    for p in sweep() {
        let steps = default_hom_steps(&p);
        let window = default_window(&p);
        for i in 1..p.h {
            for j in 1..p.h {
                let table = ext_dims(&p, i, j, steps, window, rat()).unwrap();
                let pres = presentation_dims(&p, i, j, steps, window).unwrap();
                if table.dims != pres {
                    failures.push(format!("{p}: table ({i},{j}) differs from the presentation"));
                }
            }
        }
        let top = ext_dims(&p, p.h, p.h, steps, window, rat()).unwrap();
        if !invert_tau(&top).unwrap().values().all(|&d| d == 0) {
            failures.push(format!("{p}: top object survives inverting the period"));
        }
    }
    report("05 ext-tables", &failures);
}

#[test]
fn criterion_06_endomorphism_reports() {
    let mut failures = Vec::new();
    for p in sweep() {
        for i in 1..p.h {
            let rep = end_report(&p, i, rat()).unwrap();
            let i_eff = i.min(p.h - i);
            if rep.total_k_dim != (2 * i_eff) as usize {
                failures.push(format!("{p} i={i}: total {}", rep.total_k_dim));
            }
            // Degree-zero part: powers of the weight-one unit class
            // x^|b| t^|a| below the nilpotency cut.
            let unit_w = p.b.abs() * (-p.ell) + p.a.abs() * p.h;
            let expected: BTreeMap<i64, usize> = (0..)
                .take_while(|m| m * p.b.abs() < i_eff)
                .map(|m| (m * unit_w, 1))
                .collect();
            if rep.degree_zero_dims != expected {
                failures.push(format!("{p} i={i}: degree-zero part {:?}", rep.degree_zero_dims));
            }
            if rep.socle_bidegree != fold_degree(&p, BiDegree::new(2 * p.a - 1, p.ell))
                || rep.socle_dim != 1
            {
                failures.push(format!(
                    "{p} i={i}: socle {} of dimension {}",
                    rep.socle_bidegree, rep.socle_dim
                ));
            }
        }
    }
    report("06 end-reports", &failures);
}

#[test]
fn criterion_07_quiver_counts() {
    let mut failures = Vec::new();
    for p in sweep() {
        let q = build_stable_quiver(&p).unwrap();
        if q.vertices.len() as i64 != p.b.abs() * (p.h - 1) {
            failures.push(format!("{p}: {} vertices", q.vertices.len()));
        }
        if q.sigma_orbits().len() as i64 != p.h / 2 {
            failures.push(format!("{p}: {} shift-orbits", q.sigma_orbits().len()));
        }
    }
    // The showcase case: a height-5, circumference-5 cylinder with 25
    // classes; rows below the fold keep the full period, the middle row
    // half of it.
    let p = ParamSet::new(6, 5, 6, 7).unwrap();
    let q = build_stable_quiver(&p).unwrap();
    if q.vertices.len() != 25 {
        failures.push(format!("(6,5,6,7): {} classes", q.vertices.len()));
    }
    let mut row_counts = BTreeMap::new();
    for v in &q.vertices {
        *row_counts.entry(v.i).or_insert(0usize) += 1;
    }
    let expected: BTreeMap<i64, usize> = [(1, 10), (2, 10), (3, 5)].into_iter().collect();
    if row_counts != expected {
        failures.push(format!("(6,5,6,7): row profile {row_counts:?}"));
    }
    report("07 quiver-counts", &failures);
}

#[test]
fn criterion_08_mesh_category_checks() {
    let mut failures = Vec::new();
    for p in sweep() {
        let q = build_stable_quiver(&p).unwrap();
        let hom = mesh_hom_matrix(&q).unwrap();
        if hom.max_nonzero_path_len as i64 >= p.h {
            failures.push(format!(
                "{p}: a length-{} path class survives",
                hom.max_nonzero_path_len
            ));
        }
        let duality = check_duality(&q).unwrap();
        if !duality.violations.is_empty() {
            failures.push(format!("{p}: {} duality violations", duality.violations.len()));
        }
        for i in 1..p.h {
            let row_total = graded_end_dims(&q, i).unwrap();
            let rep = end_report(&p, i, rat()).unwrap();
            if row_total != rep.total_k_dim {
                failures.push(format!(
                    "{p} i={i}: mesh row total {row_total} vs endomorphism total {}",
                    rep.total_k_dim
                ));
            }
        }
    }
    report("08 mesh-category", &failures);
}

#[test]
fn criterion_09_oracle_equivalence() {
    let mut failures = Vec::new();
    for p in sweep() {
        let q = build_stable_quiver(&p).unwrap();
        let oracle = orbit_oracle(&p).unwrap();
        let mesh = mesh_hom_matrix(&q).unwrap();
        if mesh.sorted_spectrum() != oracle.hom.sorted_spectrum() {
            failures.push(format!("{p}: dimension spectra differ"));
        }
        match match_oracle(&q, &oracle) {
            Ok(iso) => {
                if iso.len() != q.vertices.len() {
                    failures.push(format!("{p}: partial isomorphism on {} vertices", iso.len()));
                }
            }
            Err(e) => failures.push(format!("{p}: {e}")),
        }
        let bar = build_bar_quiver(&p).unwrap();
        if bar.vertices.len() as i64 != p.ell * p.b.abs() * (p.h - 1) {
            failures.push(format!("{p}: bar cover has {} vertices", bar.vertices.len()));
        }
        let cover = wrap_map(&bar, &q).unwrap();
        let mut fiber = vec![0usize; q.vertices.len()];
        for &t in &cover {
            fiber[t] += 1;
        }
        if !fiber.iter().all(|&c| c as i64 == p.ell) {
            failures.push(format!("{p}: wrap map is not {}-to-1", p.ell));
        }
    }
    report("09 oracle-equivalence", &failures);
}

#[test]
fn criterion_10_application_parameters() {
    let mut failures = Vec::new();
    let group = params_from_group(3, 1, 2).unwrap();
    let s = summarize(&group).unwrap();
    if (s.sing_count, s.cosing_count) != (1, 4) {
        failures.push(format!("group (3,1,2): counts {} and {}", s.sing_count, s.cosing_count));
    }
    let hecke = params_from_hecke(5).unwrap();
    let s = summarize(&hecke).unwrap();
    if (s.sing_count, s.cosing_count) != (9, 16) {
        failures.push(format!("hecke 5: counts {} and {}", s.sing_count, s.cosing_count));
    }
    let brauer = params_from_brauer_tree(2, 3).unwrap();
    let s = summarize(&brauer).unwrap();
    if s.sing_count != 3 {
        failures.push(format!("brauer (2,3): count {}", s.sing_count));
    }
    let mut derived = vec![group, hecke, brauer];
    derived.push(params_from_group(7, 1, 3).unwrap());
    derived.push(params_from_group(3, 2, 2).unwrap());
    derived.push(params_from_brauer_tree(5, 2).unwrap());
    for n in 3..=8 {
        derived.push(params_from_hecke(n).unwrap());
    }
    for p in derived {
        if p.a * p.h - p.b * p.ell != 1 {
            failures.push(format!("{p}: determinant {}", p.a * p.h - p.b * p.ell));
        }
    }
    report("10 applications", &failures);
}
