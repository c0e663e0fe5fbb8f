//! Low-weight irreducible moduli for GF(2^q), 1 <= q <= 128.
//!
//! Entry `q - 1` lists the middle exponents of x^q + ... + 1: one exponent for a
//! trinomial, three for a pentanomial (x + 1 for q = 1). Trinomials use the
//! smallest middle exponent; pentanomials minimise (a, b, c) lexicographically.
//! Every entry is re-validated by `is_irreducible` in the test suite.

pub(crate) static MIDDLE_EXPONENTS: [&[u32]; 128] = [
    &[],         // 1
    &[1],        // 2
    &[1],        // 3
    &[1],        // 4
    &[2],        // 5
    &[1],        // 6
    &[1],        // 7
    &[4, 3, 1],  // 8
    &[1],        // 9
    &[3],        // 10
    &[2],        // 11
    &[3],        // 12
    &[4, 3, 1],  // 13
    &[5],        // 14
    &[1],        // 15
    &[5, 3, 1],  // 16
    &[3],        // 17
    &[3],        // 18
    &[5, 2, 1],  // 19
    &[3],        // 20
    &[2],        // 21
    &[1],        // 22
    &[5],        // 23
    &[4, 3, 1],  // 24
    &[3],        // 25
    &[4, 3, 1],  // 26
    &[5, 2, 1],  // 27
    &[1],        // 28
    &[2],        // 29
    &[1],        // 30
    &[3],        // 31
    &[7, 3, 2],  // 32
    &[10],       // 33
    &[7],        // 34
    &[2],        // 35
    &[9],        // 36
    &[6, 4, 1],  // 37
    &[6, 5, 1],  // 38
    &[4],        // 39
    &[5, 4, 3],  // 40
    &[3],        // 41
    &[7],        // 42
    &[6, 4, 3],  // 43
    &[5],        // 44
    &[4, 3, 1],  // 45
    &[1],        // 46
    &[5],        // 47
    &[5, 3, 2],  // 48
    &[9],        // 49
    &[4, 3, 2],  // 50
    &[6, 3, 1],  // 51
    &[3],        // 52
    &[6, 2, 1],  // 53
    &[9],        // 54
    &[7],        // 55
    &[7, 4, 2],  // 56
    &[4],        // 57
    &[19],       // 58
    &[7, 4, 2],  // 59
    &[1],        // 60
    &[5, 2, 1],  // 61
    &[29],       // 62
    &[1],        // 63
    &[4, 3, 1],  // 64
    &[18],       // 65
    &[3],        // 66
    &[5, 2, 1],  // 67
    &[9],        // 68
    &[6, 5, 2],  // 69
    &[5, 3, 1],  // 70
    &[6],        // 71
    &[10, 9, 3], // 72
    &[25],       // 73
    &[35],       // 74
    &[6, 3, 1],  // 75
    &[21],       // 76
    &[6, 5, 2],  // 77
    &[6, 5, 3],  // 78
    &[9],        // 79
    &[9, 4, 2],  // 80
    &[4],        // 81
    &[8, 3, 1],  // 82
    &[7, 4, 2],  // 83
    &[5],        // 84
    &[8, 2, 1],  // 85
    &[21],       // 86
    &[13],       // 87
    &[7, 6, 2],  // 88
    &[38],       // 89
    &[27],       // 90
    &[8, 5, 1],  // 91
    &[21],       // 92
    &[2],        // 93
    &[21],       // 94
    &[11],       // 95
    &[10, 9, 6], // 96
    &[6],        // 97
    &[11],       // 98
    &[6, 3, 1],  // 99
    &[15],       // 100
    &[7, 6, 1],  // 101
    &[29],       // 102
    &[9],        // 103
    &[4, 3, 1],  // 104
    &[4],        // 105
    &[15],       // 106
    &[9, 7, 4],  // 107
    &[17],       // 108
    &[5, 4, 2],  // 109
    &[33],       // 110
    &[10],       // 111
    &[5, 4, 3],  // 112
    &[9],        // 113
    &[5, 3, 2],  // 114
    &[8, 7, 5],  // 115
    &[4, 2, 1],  // 116
    &[5, 2, 1],  // 117
    &[33],       // 118
    &[8],        // 119
    &[4, 3, 1],  // 120
    &[18],       // 121
    &[6, 2, 1],  // 122
    &[2],        // 123
    &[19],       // 124
    &[7, 6, 5],  // 125
    &[21],       // 126
    &[1],        // 127
    &[7, 2, 1],  // 128
];
