//! Every identity instance checked by the harness, in a fixed order.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::{binomial, factorial, parity_sign, rat, Rational};
use crate::index::{rep, SignedIndex};
use crate::quadrature::IntegrandSpec;
use crate::symbolic::{ConstantExpr, FamilyTag};

use super::plan::{Atom, GenFun, Plan, Route};

/// Suite names in registry order.
pub const SUITES: [&str; 15] = [
    "euler", "eq2_8", "thm2_4", "thm2_5", "lemmas", "stirling", "genfun", "thm3_2", "thm3_3", "cor3_4", "thm3_5",
    "thm4_1", "cor4_2", "thm4_3", "eq4_11_14",
];

/// Tolerance for identities between alternating-leading values.
pub const TOL_ALTERNATING: f64 = 1e-9;
/// Tolerance for cases whose plans involve only exact algebra and fast
/// series.
pub const TOL_TIGHT: f64 = 1e-10;
/// Tolerance for cases that rely on tail-fitted values or long
/// combinations of them.
pub const TOL_LOOSE: f64 = 1e-6;
/// Tolerance of the generating-function checks.
pub const TOL_GENFUN: f64 = 1e-30;

/// How a case is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Two numeric plans.
    Numeric { lhs: Plan, rhs: Plan },
    /// `s(n,k)` from the recurrence against `(n-1)! ζ_{n-1}({1}_{k-1})` in
    /// exact arithmetic, for all `1 <= k <= n`.
    StirlingRow(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCase {
    pub id: String,
    pub suite: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub check: Check,
    pub tolerance: f64,
}

impl IdentityCase {
    fn numeric(suite: &'static str, id: String, params: Vec<(&'static str, i64)>, lhs: Plan, rhs: Plan, tolerance: f64) -> Self {
        IdentityCase { id, suite, params, check: Check::Numeric { lhs, rhs }, tolerance }
    }

    /// True when no `(method, object)` pair occurs on both sides.
    pub fn independent(&self) -> bool {
        match &self.check {
            Check::Numeric { lhs, rhs } => lhs.signature().is_disjoint(&rhs.signature()),
            Check::StirlingRow(_) => true,
        }
    }
}

fn ones(n: u32) -> impl Iterator<Item = i64> {
    rep(1, n as usize)
}

fn ix(parts: impl IntoIterator<Item = i64>) -> Vec<i64> {
    parts.into_iter().collect()
}

fn z(signed: Vec<i64>) -> Atom {
    Atom::series(&signed)
}

fn li(exps: Vec<u32>) -> Atom {
    Atom::Polylog(exps)
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

fn sgn(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(parity_sign(n)))
}

fn one() -> Rational {
    Rational::one()
}

/// The full registry, built once.
pub fn registry() -> &'static [IdentityCase] {
    static R: OnceLock<Vec<IdentityCase>> = OnceLock::new();
    R.get_or_init(build)
}

/// Cases of one suite, or all of them for `"all"`.
pub fn suite_cases(selector: &str) -> Option<Vec<&'static IdentityCase>> {
    if selector == "all" {
        return Some(registry().iter().collect());
    }
    SUITES.contains(&selector).then(|| registry().iter().filter(|c| c.suite == selector).collect())
}

fn build() -> Vec<IdentityCase> {
    let mut out = Vec::new();
    euler(&mut out);
    eq2_8(&mut out);
    thm2_4(&mut out);
    thm2_5(&mut out);
    lemmas(&mut out);
    stirling(&mut out);
    genfun(&mut out);
    thm3_2(&mut out);
    thm3_3(&mut out);
    cor3_4(&mut out);
    thm3_5(&mut out);
    thm4_1(&mut out);
    cor4_2(&mut out);
    thm4_3(&mut out);
    eq4_11_14(&mut out);
    out
}

fn euler(out: &mut Vec<IdentityCase>) {
    for k in 2..=8u32 {
        let lhs = Plan::atom(Atom::routed(SignedIndex::star(&[k as i64, 1]), Route::Direct));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::EulerStar(k)));
        out.push(IdentityCase::numeric("euler", format!("euler/k{k}"), vec![("k", k as i64)], lhs, rhs, TOL_TIGHT));
    }
}

fn eq2_8(out: &mut Vec<IdentityCase>) {
    for m in 0..=6u32 {
        let index = SignedIndex::star(&ix([-1].into_iter().chain(ones(m))));
        let lhs = Plan::atom(Atom::routed(index, Route::Accelerated));
        let rhs = Plan::new().term(-one(), 0, vec![li(vec![m + 1])]);
        out.push(IdentityCase::numeric("eq2_8", format!("eq2_8/m{m}"), vec![("m", m as i64)], lhs, rhs, TOL_TIGHT));
    }
}

fn thm2_4(out: &mut Vec<IdentityCase>) {
    for m in 0..=4u32 {
        let lhs = Plan::atom(Atom::series_star(&ix([-1].into_iter().chain(ones(m)).chain([-1]))));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::StarBar1Ones1Bar(m)));
        out.push(IdentityCase::numeric("thm2_4", format!("thm2_4/m{m}"), vec![("m", m as i64)], lhs, rhs, TOL_ALTERNATING));
    }
}

fn thm2_5(out: &mut Vec<IdentityCase>) {
    for m in 0..=4u32 {
        let lhs = Plan::atom(Atom::series_star(&ix([2].into_iter().chain(ones(m)).chain([-1]))));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::Star2Ones1Bar(m)));
        out.push(IdentityCase::numeric("thm2_5", format!("thm2_5/m{m}"), vec![("m", m as i64)], lhs, rhs, TOL_ALTERNATING));
    }
    // the seed family ζ*(2,{1}_m) = (m+1) ζ(m+2)
    for m in 0..=4u32 {
        let lhs = Plan::atom(Atom::series_star(&ix([2].into_iter().chain(ones(m)))));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::Star2Ones(m)));
        let id = format!("thm2_5/star2ones/m{m}");
        out.push(IdentityCase::numeric("thm2_5", id, vec![("m", m as i64)], lhs, rhs, TOL_ALTERNATING));
    }
}

/// Integrals of the lemma corpus, in registry order.
pub fn lemma_corpus() -> Vec<IntegrandSpec> {
    let mut v = Vec::new();
    for x in [rat(1, 4), rat(1, 2), rat(-1, 2), rat(-1, 1)] {
        for n in 1..=5 {
            for m in 0..=4 {
                v.push(IntegrandSpec::Lemma21 { n, m, x: x.clone() });
            }
        }
    }
    for x in [rat(1, 3), rat(1, 1)] {
        for n in 0..=4 {
            for m in 0..=4 {
                v.push(IntegrandSpec::PowLog { n, m, x: x.clone() });
            }
        }
    }
    for m in 0..=5 {
        v.push(IntegrandSpec::Lemma23 { m });
    }
    for m in 1..=5 {
        v.push(IntegrandSpec::Lemma24 { m, x: rat(1, 1) });
    }
    for m in 0..=2 {
        for k in 0..=2 {
            v.push(IntegrandSpec::Thm33 { m, k });
        }
    }
    v
}

fn lemmas(out: &mut Vec<IdentityCase>) {
    for spec in lemma_corpus() {
        let lhs = Plan::atom(Atom::Quadrature(spec.clone()));
        let rhs = Plan::atom(Atom::LemmaCounterpart(spec.clone()));
        let id = format!("lemmas/{spec}");
        out.push(IdentityCase::numeric("lemmas", id, vec![], lhs, rhs, crate::quadrature::LEMMA_TOLERANCE));
    }
}

fn stirling(out: &mut Vec<IdentityCase>) {
    for n in 1..=30u32 {
        out.push(IdentityCase {
            id: format!("stirling/n{n}"),
            suite: "stirling",
            params: vec![("n", n as i64)],
            check: Check::StirlingRow(n),
            tolerance: 0.0,
        });
    }
}

fn genfun(out: &mut Vec<IdentityCase>) {
    let cases = [(GenFun::LogOneMinus, "eq3_1", rat(1, 2), 4u32), (GenFun::LogPlusOverMinus, "c3", rat(1, 3), 3), (GenFun::LogMinusOverPlus, "c4", rat(1, 3), 3)];
    for (f, name, x, kmax) in cases {
        for k in 1..=kmax {
            let lhs = Plan::atom(Atom::Elementary { f, k, x: x.clone() });
            let rhs = Plan::atom(Atom::PowerSeries { f, k, x: x.clone(), terms: 200 });
            let id = format!("genfun/{name}/k{k}");
            out.push(IdentityCase::numeric("genfun", id, vec![("k", k as i64)], lhs, rhs, TOL_GENFUN));
        }
    }
}

/// `ζ(1̄,{1}_m,1̄,{1}_k)`.
fn two_bar(m: u32, k: u32) -> Vec<i64> {
    ix([-1].into_iter().chain(ones(m)).chain([-1]).chain(ones(k)))
}

/// `[k+2, {1}_m]`.
fn li_ones(head: u32, m: u32) -> Vec<u32> {
    std::iter::once(head).chain(std::iter::repeat(1).take(m as usize)).collect()
}

fn thm3_2(out: &mut Vec<IdentityCase>) {
    for m in 0..=3u32 {
        for k in 0..=3u32 {
            let lhs = Plan::atom(z(two_bar(m, k)));
            let rhs = Plan::new().term(sgn(m as i64 + 1), 0, vec![li(li_ones(k + 2, m))]);
            let id = format!("thm3_2/m{m}k{k}");
            out.push(IdentityCase::numeric("thm3_2", id, vec![("m", m as i64), ("k", k as i64)], lhs, rhs, TOL_ALTERNATING));
        }
    }
}

fn thm3_3(out: &mut Vec<IdentityCase>) {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let lhs = Plan::atom(z(two_bar(m, k)));
            let mut rhs = Plan::new();
            let outer = sgn((m + k + 1) as i64) / fact(k);
            for j in 0..=k {
                let c = &outer * sgn(j as i64) * fact(j) * Rational::from_integer(binomial(k, j));
                let zeta = Atom::routed(SignedIndex::strict(&ix([m as i64 + 2].into_iter().chain(ones(j)))), Route::Direct);
                rhs = rhs.term(c.clone(), k - j, vec![zeta]);
                for l in 0..=m + 1 {
                    let cl = -&c / fact(m + 1 - l);
                    rhs = rhs.term(cl, k - j + m + 1 - l, vec![li(li_ones(l + 1, j))]);
                }
            }
            let id = format!("thm3_3/m{m}k{k}");
            out.push(IdentityCase::numeric("thm3_3", id, vec![("m", m as i64), ("k", k as i64)], lhs, rhs, TOL_LOOSE));
        }
    }
}

fn cor3_4(out: &mut Vec<IdentityCase>) {
    for m in 0..=5u32 {
        let lhs = Plan::atom(li(li_ones(2, m)));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::LiTwoOnes(m)));
        out.push(IdentityCase::numeric("cor3_4", format!("cor3_4/m{m}"), vec![("m", m as i64)], lhs, rhs, TOL_TIGHT));
    }
    for m in 0..=5u32 {
        let lhs = Plan::atom(z(two_bar(m, 0)));
        let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::MzvBar1OnesBar1(m)));
        let id = format!("cor3_4/zeta/m{m}");
        out.push(IdentityCase::numeric("cor3_4", id, vec![("m", m as i64)], lhs, rhs, TOL_TIGHT));
    }
}

/// `ζ(1̄,{1}_m,1̄,1̄,{1}_k)`.
fn three_bar(m: u32, k: u32) -> Vec<i64> {
    ix([-1].into_iter().chain(ones(m)).chain([-1, -1]).chain(ones(k)))
}

fn thm3_5(out: &mut Vec<IdentityCase>) {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let lhs = Plan::atom(z(three_bar(m, k)));
            let rhs = Plan::atom(Atom::ClosedForm(FamilyTag::ThreeBar(m, k)));
            let id = format!("thm3_5/m{m}k{k}");
            out.push(IdentityCase::numeric("thm3_5", id, vec![("m", m as i64), ("k", k as i64)], lhs, rhs, TOL_ALTERNATING));
        }
    }
    // the worked examples, each against the closed form that produces it
    let examples = [
        (vec![-1, 1, -1], FamilyTag::MzvBar1OnesBar1(1)),
        (vec![-1, -1, -1], FamilyTag::ThreeBar(0, 0)),
        (vec![-1, 1, 1, -1], FamilyTag::MzvBar1OnesBar1(2)),
        (vec![-1, -1, -1, 1], FamilyTag::ThreeBar(0, 1)),
        (vec![-1, 1, -1, -1], FamilyTag::ThreeBar(1, 0)),
    ];
    for (signed, tag) in examples {
        let index = SignedIndex::strict(&signed);
        let id = format!("thm3_5/example/{index}");
        let lhs = Plan::atom(Atom::routed(index, Route::Auto));
        let rhs = Plan::atom(Atom::ClosedForm(tag));
        out.push(IdentityCase::numeric("thm3_5", id, vec![], lhs, rhs, TOL_ALTERNATING));
    }
}

/// `ζ(1̄,{1}_a,h,{1}_b)`.
fn bar1_head(a: u32, h: i64, b: u32) -> Vec<i64> {
    ix([-1].into_iter().chain(ones(a)).chain([h]).chain(ones(b)))
}

/// `ζ(h,{1}_b)`.
fn head_ones(h: i64, b: u32) -> Vec<i64> {
    ix([h].into_iter().chain(ones(b)))
}

/// Both sides of the restricted sum identity with middle entry `p+3`.
fn restricted_sum(m: u32, k: u32, p: u32) -> (Plan, Plan) {
    let h = p as i64 + 3;
    let mut lhs = Plan::new();
    for i in 0..=m {
        lhs = lhs.term(sgn(m as i64 + 1) / fact(i), i, vec![z(bar1_head(m - i, h, k))]);
    }
    for i in 0..=k {
        lhs = lhs.term(sgn((p + k + 1) as i64) / fact(i), i, vec![z(bar1_head(k - i, h, m))]);
    }
    let mut rhs = Plan::new()
        .term(sgn(m as i64) / fact(m + 1), m + 1, vec![z(head_ones(-h, k))])
        .term(sgn((p + k) as i64) / fact(k + 1), k + 1, vec![z(head_ones(-h, m))]);
    for i in 0..=p {
        let a = z(head_ones(-(2 + i as i64), m));
        let b = z(head_ones(-((p + 2 - i) as i64), k));
        rhs = rhs.term(sgn(i as i64), 0, vec![a, b]);
    }
    (lhs, rhs)
}

fn thm4_1(out: &mut Vec<IdentityCase>) {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            for p in 0..=2u32 {
                let (lhs, rhs) = restricted_sum(m, k, p);
                let id = format!("thm4_1/m{m}k{k}p{p}");
                let params = vec![("m", m as i64), ("k", k as i64), ("p", p as i64)];
                out.push(IdentityCase::numeric("thm4_1", id, params, lhs, rhs, TOL_LOOSE));
            }
        }
    }
}

fn cor4_2(out: &mut Vec<IdentityCase>) {
    for m in 0..=3u32 {
        for k in 0..=3u32 {
            let mut lhs = Plan::new();
            for i in 0..=m {
                lhs = lhs.term(sgn(m as i64 + 1) / fact(i), i, vec![z(bar1_head(m - i, 3, k))]);
            }
            for i in 0..=k {
                lhs = lhs.term(sgn(k as i64 + 1) / fact(i), i, vec![z(bar1_head(k - i, 3, m))]);
            }
            let rhs = Plan::new()
                .term(sgn(m as i64) / fact(m + 1), m + 1, vec![z(head_ones(-3, k))])
                .term(sgn(k as i64) / fact(k + 1), k + 1, vec![z(head_ones(-3, m))])
                .term(one(), 0, vec![z(head_ones(-2, m)), z(head_ones(-2, k))]);
            let id = format!("cor4_2/m{m}k{k}");
            out.push(IdentityCase::numeric("cor4_2", id, vec![("m", m as i64), ("k", k as i64)], lhs, rhs, TOL_LOOSE));
        }
    }
}

/// `ζ(1̄,{1}_a,2,{1}_p,2,{1}_b)`.
fn bar1_two_two(a: u32, p: u32, b: u32) -> Vec<i64> {
    ix([-1].into_iter().chain(ones(a)).chain([2]).chain(ones(p)).chain([2]).chain(ones(b)))
}

/// `ζ(2̄,{1}_p,2,{1}_b)`.
fn bar2_two(p: u32, b: u32) -> Vec<i64> {
    ix([-2].into_iter().chain(ones(p)).chain([2]).chain(ones(b)))
}

fn thm4_3(out: &mut Vec<IdentityCase>) {
    for p in 0..=1u32 {
        for m in 0..=1u32 {
            for k in 0..=1u32 {
                let f = fact(m + 1) * fact(k + 1);
                let mut lhs = Plan::new();
                for i in 0..=m {
                    lhs = lhs.term(sgn((k + p) as i64) * &f / fact(i), i, vec![z(bar1_two_two(m - i, p, k))]);
                }
                for i in 0..=k {
                    lhs = lhs.term(sgn(m as i64 + 1) * &f / fact(i), i, vec![z(bar1_two_two(k - i, p, m))]);
                }
                lhs = lhs
                    .term(sgn((k + p) as i64) * fact(k + 1), m + 1, vec![z(bar2_two(p, k))])
                    .term(sgn(m as i64 + 1) * fact(m + 1), k + 1, vec![z(bar2_two(p, m))]);
                let mut rhs = Plan::new()
                    .term(sgn((m + k + p + 1) as i64) * &f, 0, vec![z(head_ones(-2, m)), z(bar1_head(p, 2, k))])
                    .term(sgn((m + k) as i64) * &f, 0, vec![z(head_ones(-2, k)), z(bar1_head(p, 2, m))]);
                for i in 1..=p {
                    let c = sgn((m + k + p + 1) as i64) * &f * sgn(i as i64);
                    rhs = rhs.term(c, 0, vec![z(bar1_head(i - 1, 2, m)), z(bar1_head(p - i, 2, k))]);
                }
                let id = format!("thm4_3/grid/p{p}m{m}k{k}");
                let params = vec![("p", p as i64), ("m", m as i64), ("k", k as i64)];
                out.push(IdentityCase::numeric("thm4_3", id, params, lhs, rhs, TOL_LOOSE));
            }
        }
    }
    // printed instance p = 1, k = m = 0
    let lhs = Plan::atom(z(vec![-1, 2, 1, 2]))
        .term(one(), 1, vec![z(vec![-2, 1, 2])])
        .term(one(), 0, vec![z(vec![-2]), z(vec![-1, 1, 2])]);
    let rhs = Plan::new().term(rat(1, 2), 0, vec![z(vec![-1, 2]), z(vec![-1, 2])]);
    out.push(IdentityCase::numeric("thm4_3", "thm4_3/p1k0m0".into(), vec![("p", 1), ("k", 0), ("m", 0)], lhs, rhs, TOL_LOOSE));
    // printed weight-4 value
    let printed: ConstantExpr = "-3*z4 + 3*li4 + 23/8*z3*ln2 - z2*ln2^2 + 1/8*ln2^4".parse().expect("valid literal");
    let lhs = Plan::atom(z(vec![-1, 1, 2]));
    let rhs = Plan::atom(Atom::Expr(printed));
    out.push(IdentityCase::numeric("thm4_3", "thm4_3/weight4".into(), vec![], lhs, rhs, TOL_LOOSE));
}

fn eq4_11_14(out: &mut Vec<IdentityCase>) {
    for p in 1..=2u32 {
        for k in 0..=2u32 {
            let lhs = Plan::atom(z(ix(rep(-1, 2 * p as usize + 2).chain(ones(k)))));
            let exps: Vec<u32> = std::iter::once(k + 2).chain(std::iter::repeat(2).take(p as usize)).collect();
            let rhs = Plan::new().term(sgn(p as i64 + 1), 0, vec![li(exps)]);
            let id = format!("eq4_11/p{p}k{k}");
            out.push(IdentityCase::numeric("eq4_11_14", id, vec![("p", p as i64), ("k", k as i64)], lhs, rhs, TOL_ALTERNATING));
        }
    }
    for p in 1..=2u32 {
        for k in 0..=2u32 {
            for m in 0..=1u32 {
                let signed = ix([-1].into_iter().chain(ones(m)).chain(rep(-1, 2 * p as usize + 1)).chain(ones(k)));
                let lhs = Plan::atom(z(signed));
                let exps: Vec<u32> = std::iter::once(k + 2)
                    .chain(std::iter::repeat(2).take(p as usize))
                    .chain(std::iter::repeat(1).take(m as usize))
                    .collect();
                let rhs = Plan::new().term(sgn((m + p + 1) as i64), 0, vec![li(exps)]);
                let id = format!("eq4_14/p{p}k{k}m{m}");
                let params = vec![("p", p as i64), ("k", k as i64), ("m", m as i64)];
                out.push(IdentityCase::numeric("eq4_11_14", id, params, lhs, rhs, TOL_ALTERNATING));
            }
        }
    }
}
