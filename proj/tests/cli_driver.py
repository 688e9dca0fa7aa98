#!/usr/bin/env python3
"""End-to-end checks of the command-line tool.

Usage: cli_driver.py <gtht-binary> <configs-dir>
"""
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
CONFIGS = Path(sys.argv[2])
FAILURES = []


def run(*args, expect_rc=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    bad = (proc.returncode == 0) if expect_rc == "nonzero" else (proc.returncode != expect_rc)
    if bad:
        FAILURES.append(
            f"{args}: rc={proc.returncode} (wanted {expect_rc})\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def check(cond, msg):
    if not cond:
        FAILURES.append(msg)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="gtht_cli_"))

    # gen: deterministic files, weight-3 columns on 3 tests are all ones
    ones = tmp / "ones.txt"
    run("gen", "-N", "3", "-t", "5", "-w", "3", "--seed", "7", "-o", str(ones))
    body = ones.read_text()
    check(body == "3 5\n11111\n11111\n11111\n", f"unexpected gen output: {body!r}")

    m1, m2 = tmp / "m1.txt", tmp / "m2.txt"
    run("gen", "-N", "10", "-t", "15", "-w", "2", "--seed", "42", "-o", str(m1))
    run("gen", "-N", "10", "-t", "15", "-w", "2", "--seed", "42", "-o", str(m2))
    check(m1.read_bytes() == m2.read_bytes(), "gen is not deterministic")

    # zero weight is a usage error
    run("gen", "-N", "3", "-t", "5", "-w", "0", "--seed", "1", "-o",
        str(tmp / "x.txt"), expect_rc="nonzero")

    # eval: all-zero columns under WDR(T=0) -> errors (0, 1), eps 1
    zeros = tmp / "zeros.txt"
    zeros.write_text("4 6\n" + "000000\n" * 4)
    out = run("eval", "-m", str(zeros), "-s", "2", "--rule", "wdr", "-T", "0").stdout
    lines = out.strip().splitlines()
    check(lines[0] == "N,t,s,rule,param,w,err_h0,err_h1,eps,method,trials,seed",
          f"bad eval header: {lines[0]}")
    check(lines[1] == "4,6,2,wdr,0,0,0,1,1,exact,,", f"bad eval row: {lines[1]}")

    # exact and Monte Carlo agree on a small instance
    exact = run("eval", "-m", str(m1), "-s", "2", "--rule", "wdr", "-T", "2").stdout
    mc = run("eval", "-m", str(m1), "-s", "2", "--rule", "wdr", "-T", "2",
             "--method", "mc", "--trials", "4000", "--seed", "5").stdout
    ex_err = [float(v) for v in exact.splitlines()[1].split(",")[6:9]]
    mc_err = [float(v) for v in mc.splitlines()[1].split(",")[6:9]]
    check(abs(ex_err[0] - mc_err[0]) < 0.05 and abs(ex_err[1] - mc_err[1]) < 0.05,
          f"exact vs mc mismatch: {ex_err} vs {mc_err}")

    # malformed matrix: parse error names the line, nonzero exit
    bad = tmp / "bad.txt"
    bad.write_text("2 2\n10\n0x\n")
    proc = run("eval", "-m", str(bad), "-s", "1", "--rule", "wdr", "-T", "0",
               expect_rc=1)
    check("line 3" in proc.stderr, f"parse error should name line 3: {proc.stderr}")

    # mc without a seed is refused
    run("eval", "-m", str(m1), "-s", "2", "--rule", "wdr", "-T", "2",
        "--method", "mc", expect_rc=1)

    # bound: frozen value
    out = run("bound", "-N", "10", "-t", "1000", "-s", "2").stdout.strip()
    check(out == "0.01465430862", f"bound printed {out!r}")

    # exponents: single-row table and the s=1 domain error
    out = run("exponents", "--s-min", "2", "--s-max", "2").stdout
    lines = out.strip().splitlines()
    check(lines[0] == "s,E_wdr,tau_star,Q_star,E_comp0,C_comp,R_wdr",
          f"bad exponents header: {lines[0]}")
    row = lines[1].split(",")
    check(row[0] == "2" and abs(float(row[1]) - 0.1380) < 5e-4,
          f"bad exponents row: {lines[1]}")
    run("exponents", "--s-min", "1", "--s-max", "2", expect_rc=1)

    # check-disjunctive: identity passes, the 3x4 example fails with a witness
    ident = tmp / "ident.txt"
    ident.write_text("4 4\n1000\n0100\n0010\n0001\n")
    out = run("check-disjunctive", "-m", str(ident), "-s", "2").stdout
    check("disjunctive: yes" in out, f"identity should pass: {out}")
    three = tmp / "three.txt"
    three.write_text("3 4\n1011\n1101\n0111\n")
    out = run("check-disjunctive", "-m", str(three), "-s", "2").stdout
    check("disjunctive: no" in out and "subset {1,2} covers item 3" in out,
          f"expected a witness naming subset {{1,2}}: {out}")

    # simulate: smoke config runs, outputs are deterministic, manifest exists
    out_csv = tmp / "rows.csv"
    run("simulate", "-c", str(CONFIGS / "smoke.cfg"), "-o", str(out_csv))
    check(out_csv.exists(), "simulate produced no CSV")
    check((tmp / "rows.csv.manifest.json").exists(), "simulate produced no manifest")
    first = out_csv.read_bytes()
    run("simulate", "-c", str(CONFIGS / "smoke.cfg"), "-o", str(out_csv),
        "--threads", "2")
    check(out_csv.read_bytes() == first, "simulate output differs across runs/threads")
    header = first.decode().splitlines()[0]
    check(header == "N,t,s,rule,w,T,err_h0,err_h1,eps,method,trials,master_seed",
          f"bad table2 header: {header}")

    # missing config file: I/O error, nonzero exit
    run("simulate", "-c", str(tmp / "nope.cfg"), "-o", str(tmp / "o.csv"),
        expect_rc=1)

    if FAILURES:
        print("CLI checks failed:")
        for f in FAILURES:
            print(" -", f)
        return 1
    print("all CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
