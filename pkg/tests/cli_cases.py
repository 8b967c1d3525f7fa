"""CLI invocations frozen in the golden transcript, relative to ``tests/``."""

CASES = [
    ["wp", "--variant", "v1", "--word", "[a^-1 b a, b]", "--table", "2n+3"],
    ["wp", "--variant", "v1", "--word", "[a^-7 b a^7, b]^2", "--table", "2n+3"],
    ["wp", "--variant", "v1", "--word", "a b a^-1"],
    ["wp", "--variant", "v2", "--word", "[a^-4 b a^4, b]^2"],
    ["wp", "--variant", "v2", "--word", "[a^-4 b a^4, b]", "--table", "2n+3", "--budget", "1000"],
    ["wp", "--variant", "v2", "--word", "[a^-5 b a^5, b]", "--table", "2n+3"],
    ["abel", "golden/fixtures/c2xc3.pres"],
    ["abel", "golden/pres/c1_r004.pres"],
    ["iso", "--class", "c1", "3", "3"],
    ["iso", "--class", "c1", "4", "7"],
    ["iso", "--class", "c1", "0", "1"],
    ["iso", "--class", "c2", "5", "--table", "2n+3"],
    ["iso", "--class", "c2", "4", "--table", "2n+3", "--budget", "500"],
    ["comm", "--class", "c2", "0", "0"],
    ["comm", "--class", "c2", "0", "6"],
    ["comm", "--class", "c2", "3", "5"],
    ["comm", "--class", "c1", "7", "--table", "2n+3"],
    ["comm", "--class", "c1", "4", "--budget", "10000", "--table", "2n+3"],
    ["f", "--eval", "1", "--table", "2n+3"],
    ["f", "--eval", "5"],
    ["f", "--in-range", "5", "--budget", "0", "--table", "2n+3"],
    ["f", "--in-range", "4", "--budget", "100", "--table", "2n+3"],
    ["f", "--in-range", "13", "--budget", "5000"],
    ["torus", "mul", "(b ; 1)", "(a ; 2)", "--r", "1", "--table", "2n+3"],
    ["torus", "inv", "(a y ; 2)", "--r", "1", "--table", "2n+3"],
    ["torus", "wp", "(a ; 5)"],
    ["torus", "wp", "([a^-7 b a^7, b]^2 ; 0)", "--r", "7", "--table", "2n+3"],
    ["torus", "wp", "([a^-4 b a^4, b] ; 0)", "--family", "c2", "--table", "2n+3", "--budget", "100"],
    ["reduce", "torsion-to-comm", "7", "--oracle", "perfect", "--table", "2n+3"],
    ["reduce", "torsion-to-comm", "4", "--oracle", "perfect", "--table", "2n+3"],
    ["reduce", "torsion-to-comm", "4", "--budget", "1000", "--table", "2n+3"],
    ["reduce", "word-to-iso", "5", "--oracle", "perfect", "--table", "2n+3"],
    ["reduce", "word-to-iso", "6", "--table", "2n+3"],
    ["reduce", "triviality", "trivial"],
    ["reduce", "triviality", "Z"],
    ["reduce", "triviality", "C2", "--via", "comm"],
    ["reduce", "triviality", "golden/fixtures/small.pres"],
    ["tietze", "golden/fixtures/small.pres", "--budget", "1"],
    ["enum", "--family", "c2", "--count", "3", "--truncation", "2", "--out", "{tmp}"],
    # usage and parse errors
    [],
    ["bogus"],
    ["iso", "--class", "c1", "3"],
    ["comm", "--class", "c1", "-2"],
    ["wp", "--variant", "v1"],
    ["abel", "golden/fixtures/missing.pres"],
    ["f", "--eval", "9", "--table", "3,5"],
    ["reduce", "torsion-to-comm", "4", "--oracle", "perfect"],
    ["wp", "--variant", "v1", "--word", "[a"],
    ["wp", "--variant", "v1", "--word", "a", "--table", "2n-3"],
    ["abel", "golden/fixtures/broken.pres"],
    ["torus", "mul", "(a ; 1"],
]
