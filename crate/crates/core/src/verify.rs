//! Named desk-scale checks behind the verify subcommand. Every check
//! recomputes one identity from scratch and reports a one-line detail,
//! so a full run doubles as a regression table for the library.

use crate::catalan::{enumerate_paths, qt_catalan, rational_catalan_number};
use crate::coinv;
use crate::dunkl::{
    dunkl_z, embed, retract, vandermonde_z, xbar_z, z_arity, CherednikParam, DunklContext,
};
use crate::filtration::{
    a_power, compare, filtration_a, filtration_alg_prime, filtration_ind, gr_character, kazhdan,
    GrComponent,
};
use crate::irrep::{arc_identity_check, IrrepModel, KernelMethod};
use crate::poly::{monomials_of_degree, q, q_ratio, Poly};
use crate::qt::QtPolynomial;
use crate::symgroup::{factorial, Partition, Permutation};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Dunkl,
    Irrep,
    Filtration,
    Coinvariant,
    Catalan,
}

pub const ALL_SUITES: [Suite; 5] = [
    Suite::Dunkl,
    Suite::Irrep,
    Suite::Filtration,
    Suite::Coinvariant,
    Suite::Catalan,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Dunkl => "dunkl",
            Suite::Irrep => "irrep",
            Suite::Filtration => "filtration",
            Suite::Coinvariant => "coinvariant",
            Suite::Catalan => "catalan",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(ALL_SUITES.to_vec());
        }
        ALL_SUITES
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .map(|k| vec![k])
    }
}

type CheckFn = fn() -> Result<String, String>;

pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub fn checks(suites: &[Suite]) -> Vec<Check> {
    let mut out = Vec::new();
    for &suite in suites {
        let list: &[(&'static str, CheckFn)] = match suite {
            Suite::Dunkl => &[
                ("dunkl operators commute (n=3, c=4/3)", commuting_operators),
                ("dunkl sum telescopes to zero on z (n=4)", telescoping_sum),
                ("x against y adjunction (n=3, c=4/3)", x_y_adjunction),
                ("the form is W-invariant (n=3, c=4/3)", form_w_invariance),
                ("harmonics complement the ideal (4,3)", harmonic_complement),
            ],
            Suite::Irrep => &[
                ("dimension law m^(n-1)", dimension_law),
                ("hilbert series is the q-analogue power", hilbert_series),
                ("kernel routes agree (4,3), (5,3)", kernel_routes),
                ("weight profiles (4,3), (5,3)", weight_profiles),
                ("generator identity, l = 1..n (4,3)", arc_identities),
                ("flip round trip (4,3) <-> (3,4)", flip_round_trip),
            ],
            Suite::Filtration => &[
                ("power filtration profile (4,3)", power_profile_43),
                ("power filtration profile (5,3)", power_profile_53),
                ("kazhdan regrade profile (4,3)", kazhdan_profile_43),
                ("alg equals alg-prime (4,3), (5,3)", alg_prime_match),
                ("ind equals a (4,3)", ind_matches_a_43),
                ("ind equals a (5,2), (7,2)", ind_matches_a_half),
                ("p3 sits at level one (4,3)", p3_level),
                ("invariant levels drop when c < 1 (2,3), (3,4)", level_lowering),
                ("pairing recursion across c and c-1 (4,3), (5,3)", pairing_recursion),
            ],
            Suite::Coinvariant => &[
                ("AB=0 (n=3,m=5)", ab_zero),
                ("rank(A) = rank(B) = (2n-m) n!/2", ab_ranks),
                ("Im(A) = Ker(B) (5,3)", image_kernel),
                ("V subspaces decompose in dimension", lattice_dimensions),
                ("springer quotient dimension n!/2 (n=3,4,5)", springer_dims),
                ("Im(A) is lagrangian (4,3), (5,3)", lagrangian_image),
                ("difference kernel is the psi span (n=3,4)", psi_kernel),
            ],
            Suite::Catalan => &[
                ("count (4,3) = 5", count_43),
                ("counts match the rational catalan number", count_formula),
                ("q,t symmetry and m <-> n flip", qt_symmetry),
                ("q,t tables (3,2), (4,3), (5,3)", qt_tables),
                ("gr invariant character matches C_{m,n}(q,t)", catalan_bridge),
            ],
        };
        out.extend(list.iter().map(|&(name, run)| Check { suite, name, run }));
    }
    out
}

pub fn run_checks(list: &[Check]) -> Vec<CheckResult> {
    list.par_iter()
        .map(|check| {
            let start = Instant::now();
            let outcome = (check.run)();
            let millis = start.elapsed().as_millis();
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult {
                suite: check.suite.name(),
                name: check.name,
                passed,
                detail,
                millis,
            }
        })
        .collect()
}

pub fn run_suites(suites: &[Suite]) -> Vec<CheckResult> {
    run_checks(&checks(suites))
}

fn build(m: usize, n: usize) -> Result<IrrepModel, String> {
    IrrepModel::build_mn(m, n).map_err(|e| e.to_string())
}

fn mono_poly(arity: usize, mono: crate::poly::Monomial) -> Poly {
    let mut f = Poly::zero(arity);
    f.add_term(mono, q(1));
    f
}

fn commuting_operators() -> Result<String, String> {
    let ctx = DunklContext::new(3, q_ratio(4, 3), 5);
    for d in 2..=5usize {
        for i in 0..3 {
            for j in i + 1..3 {
                let ij = ctx.y_matrix(d, i).mul(ctx.y_matrix(d - 1, j));
                let ji = ctx.y_matrix(d, j).mul(ctx.y_matrix(d - 1, i));
                ensure!(ij.sub(&ji).is_zero(), "y_{i} y_{j} != y_{j} y_{i} in degree {d}");
            }
        }
    }
    Ok("all pairs through degree 5".into())
}

fn telescoping_sum() -> Result<String, String> {
    let c = q_ratio(5, 4);
    let mut checked = 0;
    for d in 1..=4usize {
        for mono in monomials_of_degree(z_arity(4), d) {
            let f = mono_poly(z_arity(4), mono);
            let mut total = Poly::zero(z_arity(4));
            for i in 0..4 {
                total = &total + &dunkl_z(i, &f, &c);
            }
            ensure!(total.is_zero(), "sum of y_i not zero on a degree {d} monomial");
            checked += 1;
        }
    }
    Ok(format!("{checked} monomials through degree 4"))
}

fn x_y_adjunction() -> Result<String, String> {
    let n = 3;
    let c = q_ratio(4, 3);
    let ctx = DunklContext::new(n, c.clone(), 5);
    let mut checked = 0;
    for d in 0..=3usize {
        for fm in monomials_of_degree(z_arity(n), d) {
            let f = mono_poly(z_arity(n), fm);
            for gm in monomials_of_degree(z_arity(n), d + 1) {
                let g = mono_poly(z_arity(n), gm);
                for i in 0..n {
                    let lhs = ctx.pairing(&(&xbar_z(i, n) * &f), &g);
                    let rhs = ctx.pairing(&f, &dunkl_z(i, &g, &c));
                    ensure!(lhs == rhs, "adjunction fails for x_{i} in degree {d}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} triples through degree 4"))
}

fn form_w_invariance() -> Result<String, String> {
    let n = 3;
    let ctx = DunklContext::new(n, q_ratio(4, 3), 4);
    let mut checked = 0;
    for d in 1..=2usize {
        for fm in monomials_of_degree(z_arity(n), d) {
            let f = mono_poly(z_arity(n), fm);
            for gm in monomials_of_degree(z_arity(n), d) {
                let g = mono_poly(z_arity(n), gm);
                for i in 0..n {
                    for j in i + 1..n {
                        let w = Permutation::transposition(n, i, j);
                        let wf = retract(&w.act(&embed(&f))).map_err(|e| e.to_string())?;
                        let wg = retract(&w.act(&embed(&g))).map_err(|e| e.to_string())?;
                        ensure!(
                            ctx.pairing(&wf, &wg) == ctx.pairing(&f, &g),
                            "(wf, wg) != (f, g) for the transposition ({i} {j})"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} pairs under all transpositions"))
}

fn harmonic_complement() -> Result<String, String> {
    let model = build(4, 3)?;
    let h = model.harmonics().map_err(|e| e.to_string())?;
    ensure!(h.total_dim() == 6, "dim H = {}, want 3! = 6", h.total_dim());
    let ideal = a_power(&model, 1);
    ensure!(
        h.sum(&ideal).total_dim() == model.total_dim(),
        "H + aL is not all of L"
    );
    ensure!(h.intersect(&ideal).is_zero(), "H meets aL");
    Ok("dim 6 = 3!, direct sum with aL".into())
}

fn dimension_law() -> Result<String, String> {
    for (m, n) in [(3usize, 2usize), (4, 3), (5, 3), (2, 3), (3, 4)] {
        let model = build(m, n)?;
        let want = m.pow(n as u32 - 1);
        ensure!(
            model.total_dim() == want,
            "dim L_{m}/{n} = {}, want {want}",
            model.total_dim()
        );
    }
    Ok("m^(n-1) at (3,2), (4,3), (5,3), (2,3), (3,4)".into())
}

fn hilbert_series() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3), (3, 4)] {
        let model = build(m, n)?;
        let mut coeffs = vec![1usize];
        for _ in 1..n {
            let mut next = vec![0usize; coeffs.len() + m - 1];
            for (i, &a) in coeffs.iter().enumerate() {
                for j in 0..m {
                    next[i + j] += a;
                }
            }
            coeffs = next;
        }
        ensure!(
            model.graded_dims() == &coeffs[..],
            "graded dims of L_{m}/{n} differ from [m]_q^(n-1)"
        );
    }
    Ok("[m]_q^(n-1) at (4,3), (5,3), (3,4)".into())
}

fn kernel_routes() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3)] {
        let model = build(m, n)?;
        for d in 0..=model.top_degree() {
            let gram = model.kernel_degree(d, KernelMethod::Gram);
            let gens = model.kernel_degree(d, KernelMethod::Generators);
            ensure!(gram == gens, "kernels differ at ({m},{n}) degree {d}");
        }
    }
    Ok("gram nullspace = generator ideal per degree".into())
}

fn weight_profiles() -> Result<String, String> {
    let expect: [(usize, usize, Vec<usize>); 2] = [
        (4, 3, vec![1, 2, 3, 4, 3, 2, 1]),
        (5, 3, vec![1, 2, 3, 4, 5, 4, 3, 2, 1]),
    ];
    for (m, n, want) in expect {
        let model = build(m, n)?;
        let dims: Vec<usize> = (0..=model.top_degree()).map(|d| model.dim_at(d)).collect();
        ensure!(dims == want, "profile at ({m},{n}) is {dims:?}");
        for d in 0..=model.top_degree() {
            ensure!(
                model.weight(d) == d as i64 - model.mu() as i64,
                "weight at degree {d} is off"
            );
        }
    }
    Ok("multiplicity ladders match the weight diagrams".into())
}

fn arc_identities() -> Result<String, String> {
    let param = CherednikParam::new(4, 3).map_err(|e| e.to_string())?;
    for ell in 1..=3usize {
        let ok = arc_identity_check(&param, ell).map_err(|e| e.to_string())?;
        ensure!(ok, "generator identity fails at l = {ell}");
    }
    Ok("l = 1, 2, 3 at (4,3)".into())
}

fn flip_round_trip() -> Result<String, String> {
    let a = build(4, 3)?;
    let b = build(3, 4)?;
    let forward = crate::filtration::flip(&a, &b).map_err(|e| e.to_string())?;
    let back = crate::filtration::flip(&b, &a).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for d in 0..=a.top_degree() {
        for v in a.invariant_classes(d).basis() {
            let over = forward.apply(d, v).ok_or("flip refused an invariant class")?;
            let home = back.apply(d, &over).ok_or("back flip refused a class")?;
            ensure!(home == *v, "round trip moved a degree {d} class");
            checked += 1;
        }
    }
    Ok(format!("{checked} invariant classes returned unchanged"))
}

fn power_profile_43() -> Result<String, String> {
    let model = build(4, 3)?;
    let filt = filtration_a(&model);
    let cum = filt.cumulative_dims();
    ensure!(cum == vec![6, 12, 15, 16], "cumulative dims {cum:?}");
    Ok("cumulative dims 6, 12, 15, 16".into())
}

fn power_profile_53() -> Result<String, String> {
    let model = build(5, 3)?;
    let filt = filtration_a(&model);
    let cum = filt.cumulative_dims();
    ensure!(cum == vec![6, 15, 21, 24, 25], "cumulative dims {cum:?}");
    Ok("cumulative dims 6, 15, 21, 24, 25".into())
}

fn kazhdan_profile_43() -> Result<String, String> {
    let model = build(4, 3)?;
    let alg = kazhdan(&model, &filtration_a(&model));
    let cum = alg.cumulative_dims();
    ensure!(cum == vec![1, 5, 12, 16], "cumulative dims {cum:?}");
    Ok("cumulative dims 1, 5, 12, 16".into())
}

fn alg_prime_match() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3)] {
        let model = build(m, n)?;
        let alg = kazhdan(&model, &filtration_a(&model));
        let prime = filtration_alg_prime(&model);
        let report = compare(&alg, &prime).map_err(|e| e.to_string())?;
        ensure!(
            report.all_equal,
            "first discrepancy at ({m},{n}): {:?}",
            report.first_discrepancy
        );
    }
    Ok("level by level at (4,3) and (5,3)".into())
}

fn ind_matches_a_43() -> Result<String, String> {
    let model = build(4, 3)?;
    let ind = filtration_ind(&model).map_err(|e| e.to_string())?;
    let report = compare(&ind, &filtration_a(&model)).map_err(|e| e.to_string())?;
    ensure!(report.all_equal, "first discrepancy {:?}", report.first_discrepancy);
    Ok("subspace equality at every level".into())
}

fn ind_matches_a_half() -> Result<String, String> {
    for m in [5usize, 7] {
        let model = build(m, 2)?;
        let ind = filtration_ind(&model).map_err(|e| e.to_string())?;
        let report = compare(&ind, &filtration_a(&model)).map_err(|e| e.to_string())?;
        ensure!(
            report.all_equal,
            "first discrepancy at ({m},2): {:?}",
            report.first_discrepancy
        );
    }
    Ok("subspace equality at (5,2) and (7,2)".into())
}

fn p3_level() -> Result<String, String> {
    let model = build(4, 3)?;
    let filt = filtration_a(&model);
    let p3 = crate::dunkl::power_sum_z(3, 3);
    let cls = model.class_coords(3, &p3).map_err(|e| e.to_string())?;
    ensure!(filt.level_of(3, &cls) == Some(1), "p3 is not at level 1");
    let level0 = filt.level(0);
    ensure!(
        model.total_dim() - level0.total_dim() == 10,
        "level 0 leaves {} classes",
        model.total_dim() - level0.total_dim()
    );
    Ok("p3 enters at level 1".into())
}

fn level_lowering() -> Result<String, String> {
    for (m, n) in [(2usize, 3usize), (3, 4)] {
        let model = build(m, n)?;
        let report = crate::filtration::c_less_one_levels(&model).map_err(|e| e.to_string())?;
        ensure!(
            report.holds,
            "drop fails at ({m},{n}): {:?}",
            report.failures
        );
    }
    Ok("invariant differences drop a level at (2,3), (3,4)".into())
}

fn pairing_recursion() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3)] {
        let c = q_ratio(m as i64, n as i64);
        let prev = &c - &q(1);
        let delta = vandermonde_z(n);
        let ctx = DunklContext::new(n, c.clone(), 2 * n + 8);
        let ctx_prev = DunklContext::new(n, prev, 8);
        let dd = ctx.pairing(&delta, &delta);
        let p2 = crate::dunkl::power_sum_z(2, n);
        let p3 = crate::dunkl::power_sum_z(3, n);
        let samples = [
            Poly::one(z_arity(n)),
            p2.clone(),
            p3.clone(),
            &p2 * &p2,
            &p2 * &p3,
        ];
        for psi in &samples {
            for eta in &samples {
                let lhs = ctx.pairing(&(&delta * psi), &(&delta * eta));
                let rhs = &dd * &ctx_prev.pairing(psi, eta);
                ensure!(lhs == rhs, "recursion fails at ({m},{n})");
            }
        }
    }
    Ok("(d psi, d eta)_c = (d, d)_c (psi, eta)_(c-1) on invariant samples".into())
}

fn ab_zero() -> Result<String, String> {
    let (a, b) = coinv::matrix_ab(5, 3).map_err(|e| e.to_string())?;
    ensure!(a.mul(&b).is_zero(), "AB != 0");
    Ok("A (3x1 blocks) against B kills every entry".into())
}

fn ab_ranks() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3), (5, 4)] {
        let (a, b) = coinv::matrix_ab(m, n).map_err(|e| e.to_string())?;
        let want = (2 * n - m) * factorial(n) as usize / 2;
        ensure!(a.rank() == want, "rank A = {} at ({m},{n})", a.rank());
        ensure!(b.rank() == want, "rank B = {} at ({m},{n})", b.rank());
    }
    Ok("(2n-m) n!/2 at (4,3), (5,3), (5,4)".into())
}

fn image_kernel() -> Result<String, String> {
    let (a, b) = coinv::matrix_ab(5, 3).map_err(|e| e.to_string())?;
    let image = crate::linalg::Subspace::from_rows(a.cols, a.to_rows());
    let kernel = b.transpose().nullspace();
    ensure!(image == kernel, "Im(A) != Ker(B)");
    Ok(format!("both of dimension {}", image.dim()))
}

fn lattice_dimensions() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3), (7, 4)] {
        let report = coinv::lattice_check(m, n).map_err(|e| e.to_string())?;
        if let Some(bad) = report.counterexample {
            return Err(format!("({m},{n}): {bad}"));
        }
    }
    Ok("meet and sum dimensions at (4,3), (5,3), (7,4)".into())
}

fn springer_dims() -> Result<String, String> {
    for n in 3..=5usize {
        let dim = coinv::springer_min_dim(n).map_err(|e| e.to_string())?;
        ensure!(dim == factorial(n) as usize / 2, "n = {n}: dim {dim}");
    }
    Ok("n!/2 for n = 3, 4, 5".into())
}

fn lagrangian_image() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3)] {
        let ok = coinv::poincare_isotropy(m, n).map_err(|e| e.to_string())?;
        ensure!(ok, "Im(A) is not lagrangian at ({m},{n})");
    }
    Ok("isotropic of half dimension at (4,3), (5,3)".into())
}

fn psi_kernel() -> Result<String, String> {
    for n in 3..=4usize {
        let span = coinv::ker_difference(n).map_err(|e| e.to_string())?;
        let alg = coinv::CoinvAlgebra::new(n).map_err(|e| e.to_string())?;
        let x12 = &Poly::var(0, n) - &Poly::var(1, n);
        let kernel = alg.poly_matrix(&x12).transpose().nullspace();
        ensure!(span == kernel, "psi span != Ker(x1 - x2) at n = {n}");
        ensure!(span.dim() == factorial(n - 1) as usize, "dim {}", span.dim());
    }
    Ok("psi_j R_(n-2) spans the kernel, dim (n-1)!".into())
}

fn count_43() -> Result<String, String> {
    let paths = enumerate_paths(4, 3).map_err(|e| e.to_string())?;
    ensure!(paths.len() == 5, "count {}", paths.len());
    Ok("5 paths".into())
}

fn count_formula() -> Result<String, String> {
    for m in 1..=11usize {
        for n in 1..=11usize {
            if m + n > 12 || m.gcd(&n) != 1 {
                continue;
            }
            let paths = enumerate_paths(m, n).map_err(|e| e.to_string())?;
            let want = rational_catalan_number(m, n).map_err(|e| e.to_string())?;
            ensure!(
                BigInt::from(paths.len()) == want,
                "count at ({m},{n}) is {}",
                paths.len()
            );
        }
    }
    Ok("(1/(m+n)) C(m+n,n) for all coprime m+n <= 12".into())
}

fn qt_symmetry() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3), (7, 3), (5, 4)] {
        let poly = qt_catalan(m, n).map_err(|e| e.to_string())?;
        ensure!(poly == poly.swap_qt(), "q <-> t asymmetry at ({m},{n})");
        ensure!(
            poly == qt_catalan(n, m).map_err(|e| e.to_string())?,
            "flip changes the polynomial at ({m},{n})"
        );
    }
    Ok("symmetric and flip invariant at (4,3), (5,3), (7,3), (5,4)".into())
}

fn qt_tables() -> Result<String, String> {
    let freeze = |pairs: &[(i64, i64)]| {
        let mut p = QtPolynomial::zero();
        for &(a, b) in pairs {
            p.add_term((a, b, 0), BigInt::from(1));
        }
        p
    };
    let cases: [(usize, usize, Vec<(i64, i64)>); 3] = [
        (3, 2, vec![(1, 0), (0, 1)]),
        (4, 3, vec![(3, 0), (2, 1), (1, 2), (0, 3), (1, 1)]),
        (
            5,
            3,
            vec![(4, 0), (3, 1), (2, 2), (1, 3), (0, 4), (2, 1), (1, 2)],
        ),
    ];
    for (m, n, pairs) in cases {
        let got = qt_catalan(m, n).map_err(|e| e.to_string())?;
        ensure!(got == freeze(&pairs), "table at ({m},{n}): {got}");
    }
    Ok("all three frozen tables".into())
}

fn catalan_bridge() -> Result<String, String> {
    for (m, n) in [(4usize, 3usize), (5, 3)] {
        let model = build(m, n)?;
        let filt = filtration_a(&model);
        let invariants = gr_character(&model, &filt, &GrComponent::Irrep(Partition::new(vec![n])));
        let bridged = invariants.monomial_substitution(1, 0, 1, 1);
        let catalan = qt_catalan(m, n).map_err(|e| e.to_string())?;
        ensure!(
            bridged == catalan,
            "({m},{n}): got {bridged}, catalan {catalan}"
        );
    }
    Ok("q^(weight+level) t^level over gr^a invariants".into())
}
