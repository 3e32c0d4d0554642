//! Nelder-Mead downhill simplex for small, smooth, unconstrained problems.

#[derive(Debug, Clone)]
pub struct SimplexOptions {
    /// Edge length of the initial simplex along each coordinate axis.
    pub initial_step: f64,
    /// Stop once every vertex lies within this distance of the best vertex.
    pub diameter_tol: f64,
    pub max_evaluations: usize,
    /// Fresh simplices built around the incumbent after convergence.
    pub restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            initial_step: 0.1,
            diameter_tol: 1e-10,
            max_evaluations: 50_000,
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn diameter(vertices: &[Vec<f64>]) -> f64 {
    let best = &vertices[0];
    vertices[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(best)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

fn blend(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

fn single_run<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    tol: f64,
    budget: usize,
) -> SimplexResult {
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    vertices.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| eval(v, &mut evals)).collect();

    let mut converged = false;
    loop {
        // sort ascending; ties keep the earlier vertex first
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        vertices = order.iter().map(|&i| vertices[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if diameter(&vertices) < tol {
            converged = true;
            break;
        }
        if evals >= budget {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| vertices[..n].iter().map(|v| v[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = vertices[n].clone();

        let reflected = blend(&centroid, &worst, -REFLECT);
        let fr = eval(&reflected, &mut evals);
        if fr < values[0] {
            let expanded = blend(&centroid, &worst, -EXPAND);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                vertices[n] = expanded;
                values[n] = fe;
            } else {
                vertices[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            vertices[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[n] {
            let c = blend(&centroid, &reflected, CONTRACT);
            let v = eval(&c, &mut evals);
            (c, v)
        } else {
            let c = blend(&centroid, &worst, CONTRACT);
            let v = eval(&c, &mut evals);
            (c, v)
        };
        if fc < values[n].min(fr) {
            vertices[n] = contracted;
            values[n] = fc;
            continue;
        }
        let best = vertices[0].clone();
        for i in 1..=n {
            vertices[i] = blend(&best, &vertices[i], SHRINK);
            values[i] = eval(&vertices[i], &mut evals);
        }
    }

    SimplexResult {
        point: vertices[0].clone(),
        value: values[0],
        evaluations: evals,
        converged,
    }
}

/// Minimizes `f` starting from `x0`. Deterministic for a given input.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &SimplexOptions,
) -> SimplexResult {
    let mut best = single_run(
        &mut f,
        x0,
        opts.initial_step,
        opts.diameter_tol,
        opts.max_evaluations,
    );
    let mut step = opts.initial_step;
    for _ in 0..opts.restarts {
        if best.evaluations >= opts.max_evaluations {
            break;
        }
        step *= 0.1;
        let budget = opts.max_evaluations - best.evaluations;
        let next = single_run(&mut f, &best.point, step, opts.diameter_tol, budget);
        let improved = next.value < best.value;
        let evaluations = best.evaluations + next.evaluations;
        if improved {
            best = SimplexResult {
                evaluations,
                ..next
            };
        } else {
            best.evaluations = evaluations;
            best.converged &= next.converged;
            break;
        }
    }
    best
}
