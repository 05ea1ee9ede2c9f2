//! Fixtures shared by the criterion benchmarks.

/// Recurrence programs exercised by the solver benchmarks, by name.
pub const PROGRAMS: &[(&str, &str)] = &[
    ("fibonacci", "a[n+2] = a[n+1] + a[n]; a[1] = 1; a[2] = 1"),
    ("affine", "a[n+1] = 3*a[n] + 1; a[1] = 1"),
    (
        "second_order_poly",
        "a[n+2] = 2*a[n+1] - a[n] + n; a[1] = 1; a[2] = 3",
    ),
    (
        "third_order_forced",
        "a[n+3] = 2*a[n+2] + a[n+1] - 2*a[n] + n^2 + 3^n; a[1] = 0; a[2] = 1; a[3] = 1/2",
    ),
];
