//! Adaptive Dormand–Prince 5(4) integration of a scalar ODE `ẏ = f(t, y)`
//! with an escape threshold for solutions that blow up.

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub ts: Vec<f64>,
    pub ys: Vec<f64>,
    /// `(t, y)` at the first accepted step with `|y|` above the threshold.
    pub escaped: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub escape: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, escape: 1e8, max_steps: 200_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

impl Dopri5 {
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64, t0: f64, y0: f64, t_end: f64) -> Trajectory {
        let mut ts = vec![t0];
        let mut ys = vec![y0];
        let (mut t, mut y) = (t0, y0);
        let mut h = ((t_end - t0) * 1e-3).max(1e-8);
        for _ in 0..self.max_steps {
            if t >= t_end {
                break;
            }
            h = h.min(t_end - t);
            let mut k = [0.0; 7];
            for i in 0..7 {
                let yi = y + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
                k[i] = f(t + C[i] * h, yi);
            }
            let y5 = y + h * (0..7).map(|i| B5[i] * k[i]).sum::<f64>();
            let y4 = y + h * (0..7).map(|i| B4[i] * k[i]).sum::<f64>();
            let scale = self.atol + self.rtol * y.abs().max(y5.abs());
            let err = ((y5 - y4) / scale).abs();
            if err <= 1.0 && y5.is_finite() {
                t += h;
                y = y5;
                ts.push(t);
                ys.push(y);
                if y.abs() > self.escape {
                    return Trajectory { ts, ys, escaped: Some((t, y)) };
                }
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= if y5.is_finite() { factor } else { 0.2 };
            if h < 1e-14 {
                break;
            }
        }
        Trajectory { ts, ys, escaped: None }
    }
}
