use std::time::Instant;
use tzlab::data::InitialData;
use tzlab::scattering::*;

fn main() {
    let d = InitialData::gaussian(-0.1, 1.0, 0.02).unwrap();
    let opts = ScatterOpts::default();

    for lam in [0.02_f64, 0.05, 25.0, 30.0] {
        let t0 = Instant::now();
        let r = reflection_r1(&d, lam, &opts).unwrap();
        println!(
            "|r1({lam})| = {:.3e}   ({} ms)",
            r.norm(),
            t0.elapsed().as_millis()
        );
        let r2 = reflection_r2(&d, -lam, &opts).unwrap();
        println!("|r2({})| = {:.3e}", -lam, r2.norm());
    }
    for lam in [0.5_f64, 1.0, 2.0] {
        let r = reflection_r1(&d, lam, &opts).unwrap();
        println!("|r1({lam})| = {:.6e}", r.norm());
    }

    let t0 = Instant::now();
    let spec = LambdaGridSpec::default();
    let table = build_reflection_table(&d, &spec, &opts).unwrap();
    println!("table build ({} pts/sign): {:?}", spec.count, t0.elapsed());
    let rep = validate_scattering(table.samples(), &ValidationTol::default());
    println!(
        "max det residual = {:.3e}\nmax sym residual = {:.3e}\nmin |s11| = {:.6}\ndecay: r1(0) {:.3e} r1(inf) {:.3e} r2(0) {:.3e} r2(inf) {:.3e}\npass = {}",
        rep.max_det_residual,
        rep.max_sym_residual,
        rep.min_denominator,
        rep.decay.r1_origin,
        rep.decay.r1_infinity,
        rep.decay.r2_origin,
        rep.decay.r2_infinity,
        rep.pass
    );
    let max_r = table.max_abs_r();
    println!("max |r| on grid = {max_r:.6}");
}
