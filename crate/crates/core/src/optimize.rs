//! Derivative-free minimization: Nelder–Mead simplex with multi-start.

/// Simplex settings.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Iteration cap per run.
    pub max_iters: usize,
    /// Converged once the spread of simplex values falls below this.
    pub ftol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Fresh simplices rebuilt around the best point after convergence.
    pub polish_rounds: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iters: 2000,
            ftol: 1e-9,
            initial_step: 0.4,
            polish_rounds: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// One Nelder–Mead run from `x0`, followed by up to `polish_rounds` restarts
/// of the simplex at the incumbent with a smaller step.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> Minimum {
    let mut best = simplex_run(&mut f, x0, opts.initial_step, opts);
    let mut step = opts.initial_step;
    for _ in 0..opts.polish_rounds {
        step *= 0.25;
        let next = simplex_run(&mut f, &best.x, step, opts);
        let gained = best.value - next.value;
        let converged = next.converged;
        let (iters, evals) = (best.iterations + next.iterations, best.evaluations + next.evaluations);
        if next.value < best.value {
            best = next;
        }
        best.iterations = iters;
        best.evaluations = evals;
        best.converged = converged;
        if gained <= opts.ftol {
            break;
        }
    }
    best
}

fn simplex_run<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], step: f64, opts: &SimplexOptions) -> Minimum {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    if n == 0 {
        let value = eval(x0, &mut evaluations);
        return Minimum {
            x: Vec::new(),
            value,
            iterations: 0,
            evaluations,
            converged: true,
        };
    }

    let mut points: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    points.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        points.push(p);
    }
    let mut values: Vec<f64> = points.iter().map(|p| eval(p, &mut evaluations)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        // order: best first
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        points = idx.iter().map(|&i| points[i].clone()).collect();
        values = idx.iter().map(|&i| values[i]).collect();

        if values[n] - values[0] < opts.ftol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|k| points[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&points[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = eval(&reflected, &mut evaluations);
        if fr < values[0] {
            let expanded = along(EXPAND);
            let fe = eval(&expanded, &mut evaluations);
            if fe < fr {
                points[n] = expanded;
                values[n] = fe;
            } else {
                points[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            points[n] = reflected;
            values[n] = fr;
            continue;
        }
        // outside contraction when the reflection beat the worst vertex
        let (candidate, bar) = if fr < values[n] {
            (along(CONTRACT), fr)
        } else {
            (along(-CONTRACT), values[n])
        };
        let fc = eval(&candidate, &mut evaluations);
        if fc <= bar {
            points[n] = candidate;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let p: Vec<f64> = points[0]
                .iter()
                .zip(&points[i])
                .map(|(b, x)| b + SHRINK * (x - b))
                .collect();
            values[i] = eval(&p, &mut evaluations);
            points[i] = p;
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("non-empty simplex");
    Minimum {
        x: points[best].clone(),
        value: values[best],
        iterations,
        evaluations,
        converged,
    }
}
