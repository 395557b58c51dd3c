//! Golden data for the extended Haagerup example: the printed Gram
//! matrix, its reduction, and the two induction matrices.

pub const EH_GRAM: [[i64; 14]; 14] = [
    [6, 5, 8, 13, 15, 9, 6, 5, 8, 13, 12, 12, 3, 3],
    [5, 19, 26, 45, 52, 28, 7, 17, 28, 43, 41, 41, 11, 11],
    [8, 26, 56, 93, 110, 60, 6, 28, 54, 95, 84, 84, 26, 26],
    [13, 45, 93, 181, 211, 115, 13, 45, 93, 181, 163, 163, 48, 48],
    [15, 52, 110, 211, 259, 138, 16, 51, 111, 210, 199, 199, 60, 60],
    [9, 28, 60, 115, 138, 79, 8, 29, 59, 116, 108, 108, 30, 30],
    [6, 7, 6, 13, 16, 8, 8, 5, 8, 11, 13, 13, 3, 3],
    [5, 17, 28, 45, 51, 29, 5, 17, 28, 45, 40, 40, 11, 11],
    [8, 28, 54, 93, 111, 59, 8, 28, 54, 93, 85, 85, 26, 26],
    [13, 43, 95, 181, 210, 116, 11, 45, 93, 183, 162, 162, 48, 48],
    [12, 41, 84, 163, 199, 108, 13, 40, 85, 162, 154, 154, 45, 45],
    [12, 41, 84, 163, 199, 108, 13, 40, 85, 162, 154, 154, 45, 45],
    [3, 11, 26, 48, 60, 30, 3, 11, 26, 48, 45, 45, 15, 15],
    [3, 11, 26, 48, 60, 30, 3, 11, 26, 48, 45, 45, 15, 15],
];

pub const EH_M_PRIME: [[i64; 6]; 6] = [
    [6, 6, 3, 5, 9, 13],
    [6, 8, 3, 5, 8, 13],
    [3, 3, 15, 11, 30, 48],
    [5, 5, 11, 17, 29, 45],
    [9, 8, 30, 29, 79, 115],
    [13, 13, 48, 45, 115, 181],
];

pub const EH_REDUCTION: [[i64; 6]; 14] = [
    [1, 0, 0, 0, 0, 0],
    [-1, 1, 0, 1, 0, 0],
    [1, -1, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [-1, 1, 2, 0, 1, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [1, -1, 0, 0, 0, 1],
    [-1, 1, 1, 0, 1, 0],
    [-1, 1, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
];

pub const EH_INDUCTION_1: [[i64; 22]; 6] = [
    [1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [2, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [1, 2, 1, 1, 0, 3, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1],
    [2, 4, 4, 1, 0, 2, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 3, 1, 1, 1, 1],
    [4, 5, 2, 1, 0, 3, 5, 5, 5, 5, 3, 3, 3, 3, 4, 4, 4, 4, 1, 1, 1, 1],
    [1, 3, 2, 1, 0, 2, 3, 3, 3, 3, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1],
];

pub const EH_INDUCTION_2: [[i64; 22]; 8] = [
    [2, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
    [2, 2, 1, 1, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 4, 4, 1, 0, 3, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3, 3, 3, 1, 1, 1, 1],
    [3, 4, 2, 1, 0, 2, 4, 4, 4, 4, 2, 2, 2, 2, 3, 3, 3, 3, 1, 1, 1, 1],
    [3, 4, 2, 1, 0, 2, 4, 4, 4, 4, 2, 2, 2, 2, 3, 3, 3, 3, 1, 1, 1, 1],
    [1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
];

pub const EH_SELECTION: [usize; 6] = [0, 6, 12, 7, 5, 3];

pub const EH_PERMUTATION: [usize; 14] = [0, 6, 12, 13, 7, 1, 8, 2, 5, 10, 11, 3, 9, 4];

/// Coefficients (ascending powers of zeta_13 on the reduced power basis)
/// of the printed global dimension.
pub const EH_GLOBAL_DIM_COEFFS: [i64; 12] = [170, 0, 50, 50, -125, 0, -125, -125, 0, -125, 50, 50];

/// Numeric value of the global dimension under zeta -> exp(2 pi i/13).
pub const EH_GLOBAL_DIM_APPROX: f64 = 570.2468188157946;
