// Diagnosis of the residual drift of the product-form staggered energy.
use tzlab::pde::*;

fn v_nl(u: f64) -> f64 {
    potential(u) - 1.5 * u * u
}

fn st_energy_prod(st: &FieldState) -> f64 {
    let (u, up) = (&st.u, &st.u_prev);
    let n = u.len();
    let mut e = 0.0;
    for i in 0..n - 1 {
        let ut = (u[i] - up[i]) / st.dt;
        let gx = (u[i + 1] - u[i]) / st.dx() * ((up[i + 1] - up[i]) / st.dx());
        e += 0.5 * ut * ut + 0.5 * gx + 1.5 * u[i] * up[i] + 0.5 * (v_nl(u[i]) + v_nl(up[i]));
    }
    e * st.dx()
}

// Same field update but with the linearized force -3u.
fn linear_step(u: &mut Vec<f64>, up: &mut Vec<f64>, dx: f64, dt: f64) {
    let n = u.len();
    let r2 = dt * dt / (dx * dx);
    let mut next = vec![0.0; n];
    for i in 1..n - 1 {
        next[i] = 2.0 * u[i] - up[i] + r2 * (u[i + 1] - 2.0 * u[i] + u[i - 1])
            - dt * dt * 3.0 * u[i];
    }
    std::mem::swap(up, u);
    *u = next;
}

fn main() {
    // Control: linear force, product energy must telescope exactly.
    let dx = 0.02;
    let dt = 0.018;
    let half = 67.0;
    let n = (2.0 * half / dx) as usize + 1;
    let x_at = |i: usize| -half + i as f64 * dx;
    let mut u: Vec<f64> = (0..n).map(|i| -0.1 * (-x_at(i) * x_at(i) / 2.0_f64).exp()).collect();
    let mut up = vec![0.0; n];
    for i in 1..n - 1 {
        let uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
        up[i] = u[i] + 0.5 * dt * dt * (uxx - 3.0 * u[i]);
    }
    let lin_energy = |u: &[f64], up: &[f64]| -> f64 {
        let mut e = 0.0;
        for i in 0..n - 1 {
            let ut = (u[i] - up[i]) / dt;
            let gx = (u[i + 1] - u[i]) / dx * ((up[i + 1] - up[i]) / dx);
            e += 0.5 * ut * ut + 0.5 * gx + 1.5 * u[i] * up[i];
        }
        e * dx
    };
    let e0 = lin_energy(&u, &up);
    let mut worst = 0.0_f64;
    for k in 0..(50.0_f64 / dt) as usize {
        linear_step(&mut u, &mut up, dx, dt);
        if k % 500 == 0 {
            worst = worst.max((lin_energy(&u, &up) - e0).abs() / e0);
        }
    }
    worst = worst.max((lin_energy(&u, &up) - e0).abs() / e0);
    println!("linear control: worst rel drift = {worst:.3e}");

    // Profile of the nonlinear drift in time.
    let cfg = PdeConfig::default();
    let mut st = init_state(&cfg, 50.0, |x| -0.1 * (-x * x / 2.0_f64).exp(), |_| 0.0).unwrap();
    let e0 = st_energy_prod(&st);
    println!("t      D(t)/E0");
    let each = (2.5 / st.dt) as u64;
    while st.t < 50.0 {
        step(&mut st).unwrap();
        if st.step_index() % each == 0 {
            println!("{:5.1}  {:+.3e}", st.t, (st_energy_prod(&st) - e0) / e0);
        }
    }
}
