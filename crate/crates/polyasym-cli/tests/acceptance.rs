//! Acceptance gate: one test per shipping criterion, each printing a single
//! `criterion NN: PASS/FAIL` line (run with `-- --nocapture` to see the PASS
//! lines; every FAIL line doubles as the panic message).
//!
//! Two criteria fail by design and stay red on purpose:
//!
//! * criterion 03 — the blanket "error <= 2x the first omitted term" rule for
//!   the pole series does not hold on the endpoint `z = 0` (and in a band of
//!   slowly decaying Bernoulli rows at `z = 1/4`), where the omitted tail is
//!   not dominated by its first pair. The 56 failing combinations are pinned
//!   below and the test verifies the failure set matches that analysis
//!   exactly before reporting it.
//! * criterion 07 — twelve coefficient pairs are not enough for the
//!   convergent two-point sum to reach 1e-8 at degree n ~ 10 for the
//!   Bernoulli family (and for the complex-order Euler case at n = 10). Each
//!   miss is pinned with its measured error, and the same sums are shown to
//!   reach 1e-8 by 32 pairs, isolating the truncation budget as the culprit.

use polyasym::complex::working_precision;
use polyasym::rational::factorial;
use polyasym::{bernoulli, euler, oracle, HPComplex, Rational, TwoPointFlavor};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::Float;
use std::fs;
use std::process::Command;

const P: u32 = 256;

fn pass(id: u32, detail: &str) {
    println!("criterion {id:02}: PASS - {detail}");
}

fn fail(id: u32, detail: &str) -> ! {
    let line = format!("criterion {id:02}: FAIL - {detail}");
    println!("{line}");
    panic!("{line}");
}

/// `2^exp` at precision `P`, for scale-relative thresholds.
fn two_pow(exp: i32) -> Float {
    Float::with_val(P, Float::i_exp(1, exp))
}

fn oracle_rational(family: char, n: usize, mu: &Rational, z: &Rational) -> Rational {
    let values = match family {
        'B' => oracle::bernoulli_values(n, mu, z),
        _ => oracle::euler_values(n, mu, z),
    }
    .unwrap_or_else(|e| panic!("rational oracle failed (family {family}): {e}"));
    values[n].clone()
}

fn oracle_complex(family: char, n: u32, mu: &HPComplex, z: &HPComplex) -> HPComplex {
    let wp = working_precision(P, n);
    let (m, zz) = (mu.rounded(wp), z.rounded(wp));
    let values = match family {
        'B' => oracle::bernoulli_values(n as usize, &m, &zz),
        _ => oracle::euler_values(n as usize, &m, &zz),
    }
    .unwrap_or_else(|e| panic!("complex oracle failed (family {family}): {e}"));
    values[n as usize].rounded(P)
}

fn rel_to(value: &HPComplex, reference: &HPComplex) -> f64 {
    let diff = value.sub(reference).abs();
    let denom = reference.abs();
    Float::with_val(value.prec(), &diff / &denom).to_f64()
}

fn random_rational(rng: &mut StdRng, span: i64, den_max: u32) -> Rational {
    let num = rng.gen_range(-span..=span);
    let den = i64::from(rng.gen_range(1..=den_max));
    Rational::from((num, den))
}

#[test]
fn criterion_01_finite_sums_match_the_oracle_exactly() {
    let zs = [
        Rational::from(0),
        Rational::from((1, 3)),
        Rational::from(-2),
        Rational::from((5, 2)),
    ];
    let mut checked = 0u32;
    for family in ['B', 'E'] {
        for m in 0usize..=5 {
            let mu = Rational::from(-(m as i64));
            for z in &zs {
                let values = match family {
                    'B' => oracle::bernoulli_values(30, &mu, z),
                    _ => oracle::euler_values(30, &mu, z),
                }
                .unwrap_or_else(|e| fail(1, &format!("oracle failed (family {family}, m={m}): {e}")));
                for n in 0usize..=30 {
                    let sum = match family {
                        'B' => oracle::bernoulli_neg_int(n, m, z),
                        _ => oracle::euler_neg_int(n, m, z),
                    };
                    if sum != values[n] {
                        fail(
                            1,
                            &format!("family {family}, m={m}, n={n}, z={z}: finite sum != oracle"),
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    pass(1, &format!("{checked} finite-sum values equal the series oracle exactly (rational arithmetic, zero tolerance)"));
}

#[test]
fn criterion_02_order_raising_and_derivative_identities_hold_exactly() {
    let mut rng = StdRng::seed_from_u64(0x01d5_eed2);
    let mut done = 0u32;
    while done < 50 {
        let mu = random_rational(&mut rng, 40, 12);
        if mu == 0 {
            // The order-raising recurrence divides by the order.
            continue;
        }
        let z = random_rational(&mut rng, 40, 12);
        let n = rng.gen_range(1usize..=25);
        let raised = oracle::bernoulli_raise_order(n, &mu, &z)
            .unwrap_or_else(|e| fail(2, &format!("raise-order failed (mu={mu}, z={z}, n={n}): {e}")));
        let mu_up = mu.clone() + 1u32;
        if raised != oracle_rational('B', n, &mu_up, &z) {
            fail(2, &format!("order-raising mismatch at mu={mu}, z={z}, n={n}"));
        }
        if !oracle::bernoulli_derivative_check(n, &mu, &z) {
            fail(2, &format!("derivative identity failed at mu={mu}, z={z}, n={n}"));
        }
        done += 1;
    }
    pass(2, "50 random rational (mu, z), n <= 25: order-raising and derivative identities hold with exact equality");
}

/// Pinned analysis for criterion 03: every (family, z, m, n) combination whose
/// pole-series error at `k_max = 16` exceeds twice the first omitted pair,
/// with the measured error/estimate ratio. All of `z = 0` is affected (the
/// tail alternates there without first-pair dominance), plus the Bernoulli
/// band at `z = 1/4` where the pair magnitudes decay too slowly.
const POLE_SERIES_RED: &[(char, &str, u32, u32, f64)] = &[
    ('B', "0", 1, 2, 17.51),
    ('E', "0", 1, 3, 6.352),
    ('B', "0", 1, 4, 6.186),
    ('E', "0", 1, 5, 4.028),
    ('B', "0", 1, 6, 3.929),
    ('E', "0", 1, 7, 3.038),
    ('B', "0", 1, 8, 2.968),
    ('E', "0", 1, 9, 2.492),
    ('B', "0", 1, 10, 2.438),
    ('E', "0", 1, 11, 2.147),
    ('B', "0", 1, 12, 2.104),
    ('B', "0", 2, 3, 17.51),
    ('E', "0", 2, 3, 6.352),
    ('B', "0", 2, 4, 6.186),
    ('E', "0", 2, 4, 4.028),
    ('B', "0", 2, 5, 6.186),
    ('E', "0", 2, 5, 4.028),
    ('B', "0", 2, 6, 3.929),
    ('E', "0", 2, 6, 3.038),
    ('B', "0", 2, 7, 3.929),
    ('E', "0", 2, 7, 3.038),
    ('B', "0", 2, 8, 2.968),
    ('E', "0", 2, 8, 2.492),
    ('B', "0", 2, 9, 2.968),
    ('E', "0", 2, 9, 2.492),
    ('B', "0", 2, 10, 2.438),
    ('E', "0", 2, 10, 2.147),
    ('B', "0", 2, 11, 2.438),
    ('E', "0", 2, 11, 2.147),
    ('B', "0", 2, 12, 2.104),
    ('B', "0", 3, 4, 17.513),
    ('E', "0", 3, 4, 4.028),
    ('B', "0", 3, 5, 6.186),
    ('E', "0", 3, 5, 4.03),
    ('B', "0", 3, 6, 6.188),
    ('E', "0", 3, 6, 3.038),
    ('B', "0", 3, 7, 3.929),
    ('E', "0", 3, 7, 3.04),
    ('B', "0", 3, 8, 3.931),
    ('E', "0", 3, 8, 2.492),
    ('B', "0", 3, 9, 2.968),
    ('E', "0", 3, 9, 2.493),
    ('B', "0", 3, 10, 2.969),
    ('E', "0", 3, 10, 2.147),
    ('B', "0", 3, 11, 2.438),
    ('E', "0", 3, 11, 2.149),
    ('B', "0", 3, 12, 2.439),
    ('B', "0.25", 2, 3, 19.239),
    ('B', "0.25", 2, 5, 9.046),
    ('B', "0.25", 2, 7, 5.544),
    ('B', "0.25", 2, 9, 3.728),
    ('B', "0.25", 2, 11, 2.6),
    ('B', "0.25", 3, 4, 13.286),
    ('B', "0.25", 3, 6, 6.131),
    ('B', "0.25", 3, 8, 3.662),
    ('B', "0.25", 3, 10, 2.375),
];

#[test]
fn criterion_03_pole_series_error_within_twice_first_omitted_pair() {
    let k_final = 16u32;
    let zs: [(Rational, &str); 3] = [
        (Rational::from(0), "0"),
        (Rational::from((1, 4)), "0.25"),
        (Rational::from((1, 2)), "0.5"),
    ];
    let mut reds: Vec<String> = Vec::new();
    let mut drift: Vec<String> = Vec::new();
    let mut checked = 0u32;
    let mut worst = 0f64;
    for (z, z_tag) in &zs {
        let zc = HPComplex::from_rational(z, P);
        for family in ['B', 'E'] {
            for m in 1u32..=3 {
                let mu = Rational::from(m);
                for n in (m + 1)..=12 {
                    checked += 1;
                    let exact =
                        HPComplex::from_rational(&oracle_rational(family, n as usize, &mu, z), P);
                    let partial = |k_max: u32| -> HPComplex {
                        match (family, m) {
                            ('B', 1) => bernoulli::fourier_b1(n, &zc, k_max),
                            ('B', _) => bernoulli::fourier_bm(n, m, &zc, k_max),
                            (_, 1) => euler::fourier_e1(n, &zc, k_max),
                            _ => euler::fourier_em(n, m, &zc, k_max),
                        }
                        .unwrap_or_else(|e| {
                            fail(3, &format!("family {family}, m={m}, n={n}, z={z_tag}: {e}"))
                        })
                        .value
                    };
                    let kept = partial(k_final);
                    let err = kept.sub(&exact).abs();
                    let scale = Float::with_val(P, exact.abs() + 1u32);
                    let tiny = scale.clone() * two_pow(-220);
                    let floor = scale * two_pow(-200);
                    // First omitted pair, skipping pairs that are pure
                    // rounding noise (a pair can vanish identically when the
                    // phase factor does).
                    let mut prev = kept;
                    let mut first_pair: Option<Float> = None;
                    let mut est: Option<Float> = None;
                    for j in (k_final + 1)..=(k_final + 6) {
                        let next = partial(j);
                        let pair = next.sub(&prev).abs();
                        if first_pair.is_none() {
                            first_pair = Some(pair.clone());
                        }
                        if pair > tiny {
                            est = Some(pair);
                            break;
                        }
                        prev = next;
                    }
                    let est = est.or(first_pair).expect("at least one omitted pair scanned");
                    let bound = est.clone() * 2u32;
                    let ok = err <= floor || err <= bound;
                    let ratio = Float::with_val(P, &err / &est).to_f64();
                    let recorded = POLE_SERIES_RED
                        .iter()
                        .find(|&&(f, zt, mm, nn, _)| {
                            f == family && zt == *z_tag && mm == m && nn == n
                        })
                        .map(|&(_, _, _, _, r)| r);
                    match (ok, recorded) {
                        (true, None) => {}
                        (true, Some(r)) => drift.push(format!(
                            "family {family}, z={z_tag}, m={m}, n={n}: passes but was analyzed red (ratio {r})"
                        )),
                        (false, None) => drift.push(format!(
                            "family {family}, z={z_tag}, m={m}, n={n}: unexpectedly red (err/est {ratio:.3})"
                        )),
                        (false, Some(r)) => {
                            if ratio > r * 1.5 || ratio < r / 1.5 {
                                drift.push(format!(
                                    "family {family}, z={z_tag}, m={m}, n={n}: err/est {ratio:.3} drifted from analyzed {r}"
                                ));
                            }
                            worst = worst.max(ratio);
                            reds.push(format!("{family}/z={z_tag}/m={m}/n={n}"));
                        }
                    }
                }
            }
        }
    }
    if !drift.is_empty() {
        fail(3, &format!("red-set drift ({} deviations): {}", drift.len(), drift.join("; ")));
    }
    if reds.is_empty() {
        pass(3, &format!("all {checked} combinations sit within 2x the first omitted pair"));
    }
    fail(
        3,
        &format!(
            "{}/{checked} combinations exceed 2x the first-omitted-pair estimate at k_max=16 (worst err/est {worst:.1}); \
             every miss lies on the endpoint z=0, where consecutive pairs alternate without first-pair dominance, \
             or in the slow-decay Bernoulli band at z=1/4; the failure set matches the pinned analysis exactly \
             and the other {} combinations obey the bound",
            reds.len(),
            checked - u32::try_from(reds.len()).unwrap()
        ),
    );
}

#[test]
fn criterion_04_single_pole_truncation_sheds_the_predicted_bits() {
    let z = Rational::from((3, 10));
    let zc = HPComplex::from_rational(&z, P);
    let mu = Rational::from(1);
    let mut details = Vec::new();
    for family in ['B', 'E'] {
        // Keeping only the nearest pole pair (index 1 for Bernoulli, 0 for
        // Euler) leaves a tail led by a pole 2x (Bernoulli) or 3x (Euler)
        // further out, so stepping n -> n+4 drops the relative error by
        // ~4 bits or ~4*log2(3) bits.
        let k_keep = if family == 'B' { 1 } else { 0 };
        let expected = if family == 'B' { 4.0 } else { 4.0 * 3f64.log2() };
        let half_width = if family == 'B' { 1.0 } else { 1.5 };
        let (lo, hi) = (expected - half_width, expected + half_width);
        let rel_err = |n: u32| -> f64 {
            let exact = HPComplex::from_rational(&oracle_rational(family, n as usize, &mu, &z), P);
            let value = match family {
                'B' => bernoulli::fourier_b1(n, &zc, k_keep),
                _ => euler::fourier_e1(n, &zc, k_keep),
            }
            .unwrap_or_else(|e| fail(4, &format!("family {family}, n={n}: {e}")))
            .value;
            rel_to(&value, &exact)
        };
        for start in [8u32, 12, 16, 20] {
            let drop = (rel_err(start) / rel_err(start + 4)).log2();
            if !(lo..=hi).contains(&drop) {
                fail(
                    4,
                    &format!(
                        "family {family}: log2 error drop {drop:.2} outside [{lo:.2}, {hi:.2}] between n={start} and n={}",
                        start + 4
                    ),
                );
            }
            details.push(format!("{family} n={start}->{}: {drop:.2} bits", start + 4));
        }
    }
    pass(4, &format!("single-pole truncation error decays at the pole-ratio rate ({})", details.join(", ")));
}

#[test]
fn criterion_05_loop_coefficients_match_their_closed_forms() {
    let tol = 2f64.powi(-240);
    let mut rng = StdRng::seed_from_u64(0x01d5_eed5);
    let mut notes = Vec::new();
    let mut done = 0u32;
    while done < 5 {
        let mu = random_rational(&mut rng, 30, 8);
        if mu.is_integer() {
            // The loop expansion itself rejects integer order; keep the
            // coefficient comparison in the regime where it is used.
            continue;
        }
        let z = random_rational(&mut rng, 30, 8);
        let muc = HPComplex::from_rational(&mu, P);
        let zc = HPComplex::from_rational(&z, P);
        let g = bernoulli::watson_g_coeffs(&muc, &zc, 3, P)
            .unwrap_or_else(|e| fail(5, &format!("g generation failed (mu={mu}, z={z}): {e}")));
        let g_ref = bernoulli::g_reference_forms(&muc, &zc);
        let h = euler::watson_h_coeffs(&muc, &zc, 3, P)
            .unwrap_or_else(|e| fail(5, &format!("h generation failed (mu={mu}, z={z}): {e}")));
        let h_ref = euler::h_reference_forms(&muc, &zc);
        let h_tab = euler::h_tabulated_forms(&muc, &zc);
        for k in 1..=2usize {
            let rg = rel_to(&g[k], &g_ref[k]);
            let rh = rel_to(&h[k], &h_ref[k]);
            if rg > tol || rh > tol {
                fail(
                    5,
                    &format!(
                        "closed-form mismatch at mu={mu}, z={z}, k={k}: g rel {rg:.2e}, h rel {rh:.2e} (tol {tol:.1e})"
                    ),
                );
            }
        }
        notes.push(format!(
            "mu={mu}, z={z}: k=3 residuals g {:.1e} / h {:.1e}; tabulated-table deviations h2 {:.1e}, h3 {:.1e}",
            rel_to(&g[3], &g_ref[3]),
            rel_to(&h[3], &h_ref[3]),
            rel_to(&h[2], &h_tab[2]),
            rel_to(&h[3], &h_tab[3]),
        ));
        done += 1;
    }
    for note in &notes {
        println!("criterion 05: note - {note}");
    }
    pass(5, "g1, g2, h1, h2 match their closed forms below 2^-240 at 5 random rational (mu, z); k=3 residuals and the corrupt-table deviations are logged above");
}

#[test]
fn criterion_06_loop_expansion_error_scales_with_degree_doubling() {
    let mu = Rational::from((1, 2));
    let muc = HPComplex::from_rational(&mu, P);
    let z = Rational::from((3, 10));
    let zc = HPComplex::from_rational(&z, P);
    let mut details = Vec::new();
    for family in ['B', 'E'] {
        let exact_40 = HPComplex::from_rational(&oracle_rational(family, 40, &mu, &z), P);
        let exact_80 = HPComplex::from_rational(&oracle_rational(family, 80, &mu, &z), P);
        for k in 0u32..=2 {
            let rel = |n: u32, exact: &HPComplex| -> f64 {
                let value = match family {
                    'B' => bernoulli::watson_expansion(n, &muc, &zc, k, P),
                    _ => euler::watson_expansion(n, &muc, &zc, k, P),
                }
                .unwrap_or_else(|e| fail(6, &format!("family {family}, n={n}, K={k}: {e}")))
                .value;
                rel_to(&value, exact)
            };
            let ratio = rel(80, &exact_80) / rel(40, &exact_40);
            let predicted = 0.5f64.powi(k as i32 + 1);
            if !(0.5 * predicted..=2.0 * predicted).contains(&ratio) {
                fail(
                    6,
                    &format!(
                        "family {family}, K={k}: rel-err(80)/rel-err(40) = {ratio:.4}, outside [0.5, 2] x 2^-{}",
                        k + 1
                    ),
                );
            }
            details.push(format!("{family} K={k}: {ratio:.3}"));
        }
    }
    pass(6, &format!("doubling the degree scales the loop-expansion error by ~2^-(K+1) ({})", details.join(", ")));
}

/// Pinned analysis for criterion 07: the (family, complex-order?, n) cases
/// whose convergent two-point sum misses 1e-8 at `k_max = 12`, with the
/// measured relative error.
const TWOPOINT_RED: &[(char, bool, u32, f64)] = &[
    ('B', false, 10, 4.435e-4),
    ('B', false, 11, 4.963e-4),
    ('B', true, 10, 5.877e-3),
    ('B', true, 11, 3.819e-3),
    ('E', true, 10, 2.5204e-8),
];

#[test]
fn criterion_07_twopoint_sum_reaches_1e8_within_twelve_pairs() {
    let target = 1e-8;
    let ratio_tol = 2f64.powi(-200);
    let z = Rational::from((3, 10));
    let zc = HPComplex::from_rational(&z, P);
    let mu_real = HPComplex::from_rational(&Rational::from((1, 2)), P);
    let mu_cplx =
        HPComplex::from_rationals(&Rational::from((3, 2)), &Rational::from((1, 4)), P);

    // The successive-weight quotients must match their closed forms before
    // any convergence behavior is attributed to the weights.
    for (mu, tag) in [(&mu_real, "1/2"), (&mu_cplx, "3/2+1/4i")] {
        for k in 0u32..=3 {
            let b_direct = bernoulli::phi_standard(k + 1, 5, mu, P)
                .div(&bernoulli::phi_standard(k, 5, mu, P));
            let b_closed = bernoulli::twopoint_ratio_check(5, mu, k)
                .unwrap_or_else(|e| fail(7, &format!("weight ratio (mu={tag}, k={k}): {e}")));
            let e_direct =
                euler::psi_standard(k + 1, 10, mu, P).div(&euler::psi_standard(k, 10, mu, P));
            let e_closed = euler::twopoint_ratio_check(5, mu, k)
                .unwrap_or_else(|e| fail(7, &format!("weight ratio (mu={tag}, k={k}): {e}")));
            if rel_to(&b_direct, &b_closed) > ratio_tol || rel_to(&e_direct, &e_closed) > ratio_tol
            {
                fail(7, &format!("weight-ratio closed form mismatch at mu={tag}, k={k}"));
            }
        }
    }

    let mut reds = Vec::new();
    let mut notes = Vec::new();
    let cases = [
        ('B', &mu_real, false, "1/2"),
        ('B', &mu_cplx, true, "3/2+1/4i"),
        ('E', &mu_real, false, "1/2"),
        ('E', &mu_cplx, true, "3/2+1/4i"),
    ];
    for (family, mu, is_complex, tag) in cases {
        for n in [10u32, 11] {
            let exact = oracle_complex(family, n, mu, &zc);
            let rel_at = |k_max: u32| -> f64 {
                let value = match family {
                    'B' => bernoulli::twopoint_expansion(
                        n,
                        mu,
                        &zc,
                        k_max,
                        TwoPointFlavor::Standard,
                        P,
                    ),
                    _ => euler::twopoint_expansion(n, mu, &zc, k_max, TwoPointFlavor::Standard, P),
                }
                .unwrap_or_else(|e| {
                    fail(7, &format!("family {family}, mu={tag}, n={n}, k_max={k_max}: {e}"))
                })
                .value;
                rel_to(&value, &exact)
            };
            let rel_12 = rel_at(12);
            let rel_32 = rel_at(32);
            if rel_32 > target {
                fail(
                    7,
                    &format!(
                        "family {family}, mu={tag}, n={n}: rel {rel_32:.3e} still above 1e-8 at k_max=32 — the sum is not converging"
                    ),
                );
            }
            let recorded = TWOPOINT_RED
                .iter()
                .find(|&&(f, c, nn, _)| f == family && c == is_complex && nn == n)
                .map(|&(_, _, _, r)| r);
            match recorded {
                None => {
                    if rel_12 > target {
                        fail(
                            7,
                            &format!(
                                "family {family}, mu={tag}, n={n}: rel {rel_12:.3e} unexpectedly misses 1e-8 at k_max=12"
                            ),
                        );
                    }
                }
                Some(r) => {
                    if rel_12 <= target {
                        fail(
                            7,
                            &format!(
                                "family {family}, mu={tag}, n={n}: now reaches 1e-8 at k_max=12 but was analyzed red ({r:.3e})"
                            ),
                        );
                    }
                    if rel_12 > r * 1.5 || rel_12 < r / 1.5 {
                        fail(
                            7,
                            &format!(
                                "family {family}, mu={tag}, n={n}: rel {rel_12:.3e} drifted from analyzed {r:.3e}"
                            ),
                        );
                    }
                    reds.push(format!("{family}/mu={tag}/n={n}: {rel_12:.2e}"));
                }
            }
            notes.push(format!("{family} mu={tag} n={n}: k_max=12 {rel_12:.2e}, k_max=32 {rel_32:.2e}"));
        }
    }
    for note in &notes {
        println!("criterion 07: note - {note}");
    }
    if reds.is_empty() {
        pass(7, "all 8 (family, mu, n) cases reach 1e-8 within twelve pairs");
    }
    fail(
        7,
        &format!(
            "{}/8 (family, mu, n) cases miss the 1e-8 target at k_max=12 ({}); the weight quotients match their \
             closed forms and every case reaches 1e-8 by k_max=32, so the twelve-pair truncation budget, not the \
             construction, is what falls short at n ~ 10",
            reds.len(),
            reds.join(", ")
        ),
    );
}

#[test]
fn criterion_08_tilde_weights_at_unit_order_collapse_to_the_classical_term() {
    let one = HPComplex::from_i64(1, P);
    let z = Rational::from((3, 10));
    let zc = HPComplex::from_rational(&z, P);
    let tol = 2f64.powi(-200);
    for family in ['B', 'E'] {
        for n in [10u32, 11, 16] {
            let tilde = match family {
                'B' => bernoulli::twopoint_expansion(n, &one, &zc, 8, TwoPointFlavor::Tilde, P),
                _ => euler::twopoint_expansion(n, &one, &zc, 8, TwoPointFlavor::Tilde, P),
            }
            .unwrap_or_else(|e| fail(8, &format!("family {family}, n={n}: {e}")))
            .value;
            let classical = match family {
                'B' => bernoulli::fourier_b1(n, &zc, 1),
                _ => euler::fourier_e1(n, &zc, 0),
            }
            .unwrap_or_else(|e| fail(8, &format!("family {family}, n={n}: {e}")))
            .value;
            let rel = rel_to(&tilde, &classical);
            if rel > tol {
                fail(
                    8,
                    &format!(
                        "family {family}, n={n}: tilde sum differs from the nearest-pole classical term by rel {rel:.2e}"
                    ),
                );
            }
        }
    }
    pass(8, "at mu=1 the tilde two-point sum collapses onto the nearest-pole classical term (rel < 2^-200, both parities)");
}

#[test]
fn criterion_09_prefactor_ratio_sits_in_the_unit_band() {
    let n = 50u32;
    let n_fact = HPComplex::from_rational(&factorial(n), P);
    let n_c = HPComplex::from_i64(i64::from(n), P);
    let one = HPComplex::from_i64(1, P);
    // Pinned decimals for Gamma(n + mu) / (n! n^{mu-1}) at n = 50.
    for (num, den, frozen) in [(1i64, 2i64, 0.997503163955105f64), (5, 2, 1.037702541462496)] {
        let mu = Rational::from((num, den));
        let muc = HPComplex::from_rational(&mu, P);
        let top = polyasym::gamma::gamma(&n_c.add(&muc))
            .unwrap_or_else(|e| fail(9, &format!("gamma failed at mu={num}/{den}: {e}")));
        let bottom = n_fact.mul(&n_c.pow(&muc.sub(&one)));
        let ratio = top.div(&bottom);
        let band = 2.0 * ((num as f64) / (den as f64) - 1.0).abs() / f64::from(n);
        let dev = ratio.sub(&one).abs().to_f64();
        if dev > band {
            fail(
                9,
                &format!("mu={num}/{den}: |ratio - 1| = {dev:.3e} exceeds the 2|mu-1|/n band {band:.3e}"),
            );
        }
        let got = ratio.real().to_f64();
        if (got - frozen).abs() > 1e-12 || ratio.imag().clone().abs().to_f64() > 1e-60 {
            fail(
                9,
                &format!("mu={num}/{den}: ratio {got:.15} deviates from the pinned value {frozen:.15}"),
            );
        }
    }
    pass(9, "Gamma(n+mu)/(n! n^(mu-1)) sits inside 1 +- 2|mu-1|/n at n=50 and matches the pinned digits for mu=1/2 and 5/2");
}

#[test]
fn criterion_10_report_bundles_are_byte_identical_across_reruns() {
    let bin = env!("CARGO_BIN_EXE_polyasym");
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/default.cfg");
    let dir = tempfile::tempdir().unwrap_or_else(|e| fail(10, &format!("tempdir: {e}")));
    let out_a = dir.path().join("first");
    let out_b = dir.path().join("second");
    for out in [&out_a, &out_b] {
        let output = Command::new(bin)
            .args(["report", config, "--out"])
            .arg(out)
            .env_remove("POLYASYM_PRECISION")
            .output()
            .unwrap_or_else(|e| fail(10, &format!("failed to launch the binary: {e}")));
        if !output.status.success() {
            fail(10, &format!("report run failed: {}", String::from_utf8_lossy(&output.stderr)));
        }
    }
    let list = |dir: &std::path::Path| -> Vec<String> {
        let mut names: Vec<String> = fs::read_dir(dir)
            .unwrap_or_else(|e| fail(10, &format!("read_dir: {e}")))
            .map(|entry| entry.expect("dir entry").file_name().to_string_lossy().into_owned())
            .collect();
        names.sort();
        names
    };
    let names = list(&out_a);
    if names != list(&out_b) {
        fail(10, "the two runs produced different file sets");
    }
    if !names.iter().any(|n| n == "manifest.md") {
        fail(10, "bundle is missing manifest.md");
    }
    for name in &names {
        let a = fs::read(out_a.join(name)).unwrap_or_else(|e| fail(10, &format!("{name}: {e}")));
        let b = fs::read(out_b.join(name)).unwrap_or_else(|e| fail(10, &format!("{name}: {e}")));
        if a != b {
            fail(10, &format!("{name} differs between identical runs"));
        }
    }
    let manifest = fs::read_to_string(out_a.join("manifest.md"))
        .unwrap_or_else(|e| fail(10, &format!("manifest.md: {e}")));
    if !manifest.contains("evaluation errors: 0") {
        fail(10, "the shipped config produced evaluation errors");
    }
    pass(10, &format!("{} bundle files byte-identical across reruns; the shipped config evaluates cleanly", names.len()));
}
