mod common;

use common::*;
use gdtel_core::macaulay::{is_regular, PivotPolicy};
use gdtel_core::reduction::IntegralFraction;
use gdtel_core::telescoper::*;

#[test]
fn random_cubic_curve_order_two() {
    let mut r = rng(1);
    let f = rand_form(&mut r, 3, 3, 1, 99);
    assert!(is_regular(&f).unwrap());
    let a = rand_form(&mut r, 3, 3, 1, 99);
    let input = IntegralFraction::new(a, z(&[1]), 2);
    let t0 = std::time::Instant::now();
    let out = telesc_integral(&input, &f, &TelescConfig::default()).unwrap();
    eprintln!("order {} degree {} in {:?}", out.op.order(), out.op.degree(), t0.elapsed());
    assert_eq!(out.op.order(), 2);
    let out2 = telesc_integral(&input, &f, &TelescConfig { policy: PivotPolicy::Reversed, ..Default::default() }).unwrap();
    assert_eq!(out.op, out2.op);
    assert!(verify_telescoper_integral(&out.op, &input, &f, 400).unwrap());
}


#[test]
fn linear_denominators_are_exact() {
    // in any dimension a hyperplane complement has no primitive cohomology
    let mut r = rng(5);
    for nv in 2..=4 {
        let f = rand_form(&mut r, nv, 1, 1, 9);
        for ell in nv as u32..nv as u32 + 2 {
            let a = rand_form(&mut r, nv, ell - nv as u32, 1, 9);
            let input = IntegralFraction::new(a, z(&[1]), ell);
            let out = telesc_integral(&input, &f, &TelescConfig::default()).unwrap();
            assert_eq!(out.op, DiffOp::one());
        }
    }
}
