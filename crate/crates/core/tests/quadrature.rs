//! Tanh-sinh behaviour on the lemma integrands: independent reference
//! values, level convergence, mirror invariance and the lemma corpus.

use mzv_core::exact::rat;
use mzv_core::quadrature::{check_lemma, integrate, integrate_lemma2_1_mirrored, integrate_traced, IntegrandSpec};
use mzv_core::verify::lemma_corpus;
use mzv_core::{BigReal, Precision};

fn p() -> Precision {
    Precision::DEFAULT
}

/// 40-digit references computed separately with mpmath's quadrature.
#[test]
fn matches_reference_integrals() {
    let cases = [
        (IntegrandSpec::Lemma21 { n: 2, m: 2, x: rat(-1, 1) }, "0.136294361119890618834464242916353136151"),
        (IntegrandSpec::PowLog { n: 3, m: 4, x: rat(1, 3) }, "0.01294332124385943360514737920174942845727"),
        (IntegrandSpec::Lemma23 { m: 2 }, "-0.1766521347320204149560507730528628868807"),
        (IntegrandSpec::Lemma24 { m: 3, x: rat(1, 1) }, "0.1425141979357109157087215012096521608955"),
        (IntegrandSpec::Thm33 { m: 1, k: 2 }, "0.07412314426186645216943302179777207935741"),
    ];
    for (spec, text) in cases {
        let r = integrate(&spec, p()).unwrap();
        let diff = (&r.value - &BigReal::parse_decimal(text, p()).unwrap()).abs();
        assert!(diff.to_f64() < 1e-38, "{spec}: off by {}", diff.to_decimal(4));
    }
}

/// After the first few levels the estimates settle: each difference is at
/// most a tenth of the previous one until both reach the noise floor.
#[test]
fn level_differences_shrink() {
    let floor = p().eps_scaled(40).to_f64();
    for spec in [
        IntegrandSpec::Lemma21 { n: 3, m: 4, x: rat(1, 2) },
        IntegrandSpec::PowLog { n: 0, m: 4, x: rat(1, 1) },
        IntegrandSpec::Lemma23 { m: 5 },
        IntegrandSpec::Thm33 { m: 2, k: 2 },
    ] {
        let t = integrate_traced(&spec, p()).unwrap();
        let diffs: Vec<f64> = t.levels.windows(2).map(|w| (&w[1] - &w[0]).abs().to_f64()).collect();
        for w in diffs.windows(2).skip(2) {
            assert!(w[1] <= w[0] * 0.1 || w[1] <= floor, "{spec}: {diffs:?}");
        }
    }
}

#[test]
fn mirrored_substitution_agrees() {
    for x in [rat(1, 4), rat(1, 2), rat(-1, 2), rat(-1, 1)] {
        for (n, m) in [(1, 0), (2, 3), (5, 4)] {
            let a = integrate(&IntegrandSpec::Lemma21 { n, m, x: x.clone() }, p()).unwrap();
            let b = integrate_lemma2_1_mirrored(n, m, &x, p()).unwrap();
            assert!((&a.value - &b.value).abs().to_f64() < 1e-40, "n={n} m={m} x={x}");
        }
    }
}

#[test]
fn lemma_corpus_checks_pass() {
    let corpus = lemma_corpus();
    assert_eq!(corpus.len(), 100 + 50 + 6 + 5 + 9);
    for spec in corpus {
        let rec = check_lemma(&spec, p()).unwrap();
        assert!(rec.pass, "{spec}: diff {:?}", rec.diff.map(|d| d.to_decimal(4)));
        assert!(rec.diff.unwrap().to_f64() < 1e-30, "{spec}");
    }
}
