//! Sets `BHL_DIM_GUARD`, so it lives in its own test binary.

fn bhl(args: &str) -> bhl::Output {
    bhl::run(std::iter::once("bhl").chain(args.split_whitespace()))
}

#[test]
fn exceeded_guard_is_a_skip() {
    std::env::set_var("BHL_DIM_GUARD", "20");
    let out = bhl("verify ribbon --p 3 --mu 0 --format json");
    assert_eq!(out.code, 0, "{}", out.stdout);
    let r = out.report.unwrap();
    let skipped: Vec<_> = r.checks.iter().filter(|c| c.status == bhl_core::report::Status::Skip).collect();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0].details.contains("exceeds guard 20"), "{}", skipped[0].details);
    assert_eq!(bhl("verify ribbon --p 3 --mu 0 --strict").code, 1);
    assert_eq!(bhl("verify hopf-axioms --p 3 --strict").code, 0);
    assert_eq!(bhl("stable-dim --p 3 --strict").code, 1);
}
