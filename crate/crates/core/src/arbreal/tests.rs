use super::*;
use proptest::prelude::*;

fn dec(s: &str) -> ArbReal {
    ArbReal::parse_decimal(s, 80).unwrap()
}

fn assert_close(got: &ArbReal, want: &str, digits: i64) {
    let w = dec(want);
    let err = (got - &w).abs();
    let scale = ArbReal::max_abs(&w, &ArbReal::one(80));
    let rel = err.checked_div(&scale).unwrap();
    assert!(rel.below_pow10(digits), "got {got}, want {want}, err {err:.5}");
}

const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494";
const G: &str = "0.915965594177219015054603514932384110774149374281672134266498";
const ZETA3: &str = "1.20205690315959428539973816151144999076498629234049888179227";
const LN_ALPHA: &str = "0.481211825059603447497758913424368423135184334385660519661018";

#[test]
fn constants_primary_and_check_routes() {
    assert_close(&pi(50), PI, 50);
    assert_close(&pi_agm(50), PI, 50);
    assert_close(&catalan_g(50), G, 50);
    assert_close(&catalan_g_clausen(50), G, 50);
    assert_close(&zeta3(50), ZETA3, 50);
    assert_close(&zeta3_euler_maclaurin(50), ZETA3, 50);
    assert_close(&ln_alpha(50), LN_ALPHA, 50);
    assert_close(&ln_alpha_asinh(50), LN_ALPHA, 50);
    assert_close(&ln2(50), "0.69314718055994530941723212145817656807550013436025525412068", 50);
}

#[test]
fn roots_and_powers() {
    assert_close(
        &ArbReal::from_i64(5, 50).sqrt().unwrap(),
        "2.2360679774997896964091736687312762354406183596115257242709",
        50,
    );
    assert_close(
        &ArbReal::from_i64(5, 50).nth_root(4).unwrap(),
        "1.49534878122122054191189899414091339536345975761470634551659",
        50,
    );
    let x = ArbReal::from_i64(-27, 30).nth_root(3).unwrap();
    assert_close(&x, "-3", 30);
    assert!(ArbReal::from_i64(-4, 30).sqrt().is_err());
    assert_close(&ArbReal::from_i64(3, 40).powi(-3).unwrap(), "0.037037037037037037037037037037037037037037", 40);
    assert!(ArbReal::zero(20).powi(-1).is_err());
}

#[test]
fn elementary_values() {
    let x = |s: &str| ArbReal::parse_decimal(s, 50).unwrap();
    assert_close(
        &pi(60).div_i64(10).with_digits(50).cos().unwrap(),
        "0.951056516295153572116439333379382143405698634125750222447306",
        50,
    );
    assert_close(&x("1").exp().unwrap(), "2.71828182845904523536028747135266249775724709369995957496697", 50);
    assert_close(&x("-50").exp().unwrap(), "1.92874984796391778301734281652701257475283265123026291089781e-22", 50);
    assert_close(&x("10").ln().unwrap(), "2.30258509299404568401799145468436420760110148862877297603333", 50);
    assert_close(&x("100").sin().unwrap(), "-0.506365641109758793656557610459785432065032721290657323443392", 50);
    assert_close(&x("3").arctan().unwrap(), "1.24904577239825442582991707728109012307782940412989671905467", 50);
    assert_close(&x("0.3").arcsin().unwrap(), "0.304692654015397507972002961227529166954560031706776387392978", 50);
    assert_close(&x("2").tanh().unwrap(), "0.964027580075816883946413724100923150255029976240934776048263", 50);
    let s = x("1e-5").sinh().unwrap();
    let want = dec("0.0000100000000001666666666675000000000019841269841297398589065281");
    assert!((&s - &want).abs().checked_div(&want).unwrap().below_pow10(50));
    assert_close(&x("1").arcsin().unwrap(), "1.57079632679489661923132169163975144209858469968755291048747", 50);
    assert!(x("1.0000001").arcsin().is_err());
    assert!(x("0").ln().is_err());
}

#[test]
fn tiny_sine_keeps_relative_precision() {
    let t = ArbReal::parse_decimal("1e-40", 30).unwrap();
    let s = t.sin().unwrap();
    let rel = (&s - &t).abs().checked_div(&t).unwrap();
    assert!(rel.below_pow10(30));
}

#[test]
fn clausen_values() {
    let x = |s: &str| ArbReal::parse_decimal(s, 40).unwrap();
    assert_close(&clausen2(&x("1")).unwrap(), "1.01395913236076850429457433888591468756117928007771731687705", 40);
    assert_close(&clausen2(&x("-7")).unwrap(), "-0.960598206245357214835293891778039108155051830389892124471382", 40);
    let third = pi(45).div_i64(3).with_digits(40);
    assert_close(&clausen2(&third).unwrap(), "1.01494160640965362502120255427452028594168930753029979201749", 40);
    assert!(clausen2(&pi(40)).unwrap().below_pow10(38));
}

#[test]
fn tanh_sinh_endpoint_singularities() {
    let mut f = |x: &ArbReal| -> Result<ArbReal, ArbError> { Ok((&x.ln()? * &(&ArbReal::one(40) - x).ln()?).with_digits(40)) };
    let r = tanh_sinh(&mut f, &ArbReal::zero(40), &ArbReal::one(40), 40).unwrap();
    assert_close(&r.value, "0.355065933151773563527584833353974810781050098793201562264442", 40);
    let mut g = |x: &ArbReal| -> Result<ArbReal, ArbError> { x.sqrt()?.recip() };
    let r = tanh_sinh(&mut g, &ArbReal::zero(30), &ArbReal::one(30), 30).unwrap();
    assert_close(&r.value, "2", 30);
    let r = tanh_sinh(&mut g, &ArbReal::one(30), &ArbReal::zero(30), 30).unwrap();
    assert_close(&r.value, "-2", 30);
}

#[test]
fn tanh_sinh_reports_nonconvergence() {
    let mut f = |x: &ArbReal| -> Result<ArbReal, ArbError> { x.recip() };
    match tanh_sinh(&mut f, &ArbReal::zero(8), &ArbReal::one(8), 8) {
        Err(ArbError::Convergence { levels, .. }) => assert_eq!(levels, MAX_LEVEL),
        other => panic!("expected convergence failure, got {other:?}"),
    }
}

#[test]
fn decimal_rendering() {
    let x = ArbReal::parse_decimal("-123.456", 20).unwrap();
    assert_eq!(x.to_sci_string(6), "-1.23456e2");
    assert_eq!(x.to_decimal_string(6), "-123.456");
    assert_eq!(ArbReal::parse_decimal("0.00125", 20).unwrap().to_decimal_string(3), "0.00125");
    assert_eq!(ArbReal::from_i64(99999, 20).to_sci_string(3), "1.00e5");
    assert_eq!(ArbReal::zero(5).to_decimal_string(5), "0");
}

#[test]
fn guard_policy() {
    assert_eq!(guard_digits(50), 15);
    assert_eq!(working_digits(10), 21);
    assert_eq!(working_digits(1), 12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn precision_monotone(num in -10_000i64..10_000, den in 1i64..1000, d in 10u32..60) {
        let r = crate::exactnum::rat(num, den);
        let lo = ArbReal::from_rational(&r, d).exp().unwrap();
        let hi = ArbReal::from_rational(&r, d + 20).exp().unwrap();
        let rel = (&lo - &hi).abs().checked_div(&hi).unwrap();
        prop_assert!(rel.below_pow10(d as i64 - 1));
    }

    #[test]
    fn pythagorean_identity(num in -100_000i64..100_000, d in 10u32..50) {
        let x = ArbReal::from_rational(&crate::exactnum::rat(num, 997), d);
        let (s, c) = x.sin_cos().unwrap();
        let one = &s.square() + &c.square();
        prop_assert!((&one - &ArbReal::one(d)).below_pow10(d as i64 - 1));
    }

    #[test]
    fn exp_ln_roundtrip(num in 1i64..1_000_000, den in 1i64..1000, d in 10u32..50) {
        let x = ArbReal::from_rational(&crate::exactnum::rat(num, den), d);
        let y = x.ln().unwrap().exp().unwrap();
        let rel = (&y - &x).abs().checked_div(&x).unwrap();
        prop_assert!(rel.below_pow10(d as i64 - 1));
    }

    #[test]
    fn arithmetic_matches_rationals(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000, c in -1000i64..1000) {
        let d = 40;
        let (ra, rb) = (crate::exactnum::rat(a, b), crate::exactnum::rat(c, 7));
        let x = ArbReal::from_rational(&ra, d);
        let y = ArbReal::from_rational(&rb, d);
        let exact = ArbReal::from_rational(&(&ra * &rb + &ra - &rb), d);
        let got = &(&(&x * &y) + &x) - &y;
        let scale = ArbReal::max_abs(&exact, &ArbReal::one(d));
        prop_assert!((&got - &exact).abs().checked_div(&scale).unwrap().below_pow10(d as i64 - 2));
    }

    #[test]
    fn decimal_roundtrip(m in -1_000_000_000i64..1_000_000_000, e in -30i64..30) {
        let s = format!("{m}e{e}");
        let x = ArbReal::parse_decimal(&s, 30).unwrap();
        let back = ArbReal::parse_decimal(&x.to_sci_string(25), 30).unwrap();
        prop_assert_eq!(x.to_sci_string(20), back.to_sci_string(20));
    }
}
