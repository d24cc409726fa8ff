use bct_core::verify::{verify_prop1, verify_prop2, verify_prop3, CheckOptions, Verdict};
fn main() {
    let opt = CheckOptions::default();
    let t0 = std::time::Instant::now();
    let r = verify_prop1(10, 10, &opt);
    println!("prop1(10,10): {:?} verdict {:?} stated_failures {}", t0.elapsed(), r.verdict, r.parameters["stated_witness_failures"]);
    let t0 = std::time::Instant::now();
    let r = verify_prop2(10, 10, &opt);
    println!("prop2(10,10): {:?} verdict {:?}", t0.elapsed(), r.verdict);
    let t0 = std::time::Instant::now();
    let r = verify_prop3(8, &opt);
    println!("prop3(8): {:?} verdict {:?}", t0.elapsed(), r.verdict);
    assert_eq!(r.verdict, Verdict::Verified);
}
