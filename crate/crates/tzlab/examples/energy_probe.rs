use tzlab::pde::*;

fn drift(name: &str, f: impl Fn(&FieldState) -> f64) {
    let cfg = PdeConfig::default();
    let mut st = init_state(&cfg, 50.0, |x| -0.1 * (-x * x / 2.0_f64).exp(), |_| 0.0).unwrap();
    let e0 = f(&st);
    let mut worst = 0.0_f64;
    let check_every = (1.0 / st.dt) as u64;
    while st.t < 50.0 {
        step(&mut st).unwrap();
        if st.step_index() % check_every == 0 {
            worst = worst.max((f(&st) - e0).abs() / e0.abs());
        }
    }
    worst = worst.max((f(&st) - e0).abs() / e0.abs());
    println!("{name}: E0 = {e0:.8e}, worst rel drift = {worst:.3e}");
}

fn v_nl(u: f64) -> f64 {
    potential(u) - 1.5 * u * u
}

fn main() {
    // (a) staggered, averaged potential (current energy())
    drift("staggered avg-V     ", |st| st_energy_avg(st));
    // (b) staggered, product quadratic + averaged nonlinear remainder
    drift("staggered product-V ", |st| st_energy_prod(st));
    // (c) naive centered
    drift("naive centered      ", centered_energy);
    // (d) (b) minus the dt² shadow generator (dt²/4)·Σ V_nl''(mid)·ut²
    drift("shadow corrected    ", |st| st_energy_shadow(st));
}

fn v_nl_dd(u: f64) -> f64 {
    u.exp() + 2.0 * (-2.0 * u).exp() - 3.0
}

fn st_energy_shadow(st: &FieldState) -> f64 {
    let (u, up) = (&st.u, &st.u_prev);
    let n = u.len();
    let mut e = 0.0;
    for i in 0..n - 1 {
        let ut = (u[i] - up[i]) / st.dt;
        let gx = (u[i + 1] - u[i]) / st.dx() * ((up[i + 1] - up[i]) / st.dx());
        let mid = 0.5 * (u[i] + up[i]);
        e += 0.5 * ut * ut
            + 0.5 * gx
            + 1.5 * u[i] * up[i]
            + 0.5 * (v_nl(u[i]) + v_nl(up[i]))
            - 0.25 * st.dt * st.dt * v_nl_dd(mid) * ut * ut;
    }
    e * st.dx()
}

fn st_energy_avg(st: &FieldState) -> f64 {
    let (u, up) = (&st.u, &st.u_prev);
    let n = u.len();
    let mut e = 0.0;
    for i in 0..n - 1 {
        let ut = (u[i] - up[i]) / st.dt;
        let gx = (u[i + 1] - u[i]) / st.dx() * ((up[i + 1] - up[i]) / st.dx());
        e += 0.5 * ut * ut + 0.5 * gx + 0.5 * (potential(u[i]) + potential(up[i]));
    }
    e * st.dx()
}

fn st_energy_prod(st: &FieldState) -> f64 {
    let (u, up) = (&st.u, &st.u_prev);
    let n = u.len();
    let mut e = 0.0;
    for i in 0..n - 1 {
        let ut = (u[i] - up[i]) / st.dt;
        let gx = (u[i + 1] - u[i]) / st.dx() * ((up[i + 1] - up[i]) / st.dx());
        e += 0.5 * ut * ut
            + 0.5 * gx
            + 1.5 * u[i] * up[i]
            + 0.5 * (v_nl(u[i]) + v_nl(up[i]));
    }
    e * st.dx()
}
