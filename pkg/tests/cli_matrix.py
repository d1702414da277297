"""The CLI command matrix shared by the golden-file tests and the acceptance suite.

Regenerate the golden files with ``python tests/cli_matrix.py --regen``.
"""

import os
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
FIX = os.path.join(HERE, "fixtures")
GOLDEN = os.path.join(HERE, "golden")


def fx(name):
    return os.path.join(FIX, name)


F4 = ["--p", "2", "--modulus", "1,1,1"]

# (case name, argv after the program name, expected exit status)
MATRIX = [
    ("osc_pi1_p3", ["osc", fx("pi1_p3.json")], 0),
    ("osc_pi2_pi1_p2", ["osc", fx("pi2_plus_pi1_p2.json")], 0),
    ("osc_pi1_e2", ["osc", fx("pi1_e2_p3.json")], 0),
    ("approx_pi2_pi1_m1", ["approx", fx("pi2_plus_pi1_p2.json"), "--m", "1"], 0),
    ("approx_mixed_m1", ["approx", fx("mixed_p2.json"), "--m", "1"], 0),
    ("approx_pi1_m0", ["approx", fx("pi1_p3.json"), "--m", "0"], 0),
    ("identity_pi1_p3", ["identity", fx("pi1_p3.json")], 0),
    ("identity_pi2_pi1", ["identity", fx("pi2_plus_pi1_p2.json")], 0),
    ("oracle_pi2_pi1", ["oracle", fx("pi2_plus_pi1_p2.json")], 0),
    ("oracle_unsupported", ["oracle", fx("pi1_e2_p3.json")], 1),
    ("bound_pi1", ["bound", fx("pi1_p3.json"), "--A", "5/6"], 0),
    ("constants_p2", ["constants", "--p", "2"], 0),
    ("constants_p3_m1", ["constants", "--p", "3", "--m", "1"], 0),
    ("apf_p2_e1", ["apf", "--p", "2", "--e", "1", "--n", "3"], 0),
    ("apf_p3_e2", ["apf", "--p", "3", "--e", "2", "--n", "2"], 0),
    ("twist_check_zero", ["twist", "check", fx("zero_seq_f2.json"), fx("rel_11.json"), "--p", "2"], 0),
    ("twist_check_omega", ["twist", "check", fx("omega_f4.json"), fx("rel_11.json")] + F4, 0),
    ("twist_find_period3", ["twist", "find", fx("period3_f2.json"), "--r-max", "3", "--p", "2"], 0),
    ("twist_gen_omega", ["twist", "gen", fx("rel_11.json"), "--initial", fx("seed_omega.json"), "--count", "6"] + F4, 0),
    ("twist_count_f2", ["twist", "count", fx("rel_11.json"), "--length", "5", "--p", "2"], 0),
    ("twist_count_f4", ["twist", "count", fx("rel_11.json"), "--length", "4"] + F4, 0),
    ("coh_validate_eta1", ["coh", "validate", fx("eta1_p2.json")], 0),
    ("coh_validate_bad", ["coh", "validate", fx("not_invariant_p3.json")], 0),
    ("coh_psi_eta12", ["coh", "psi", fx("eta1_eta2_p3.json"), "--count", "4"], 0),
    ("coh_psi_bad", ["coh", "psi", fx("not_invariant_p3.json")], 1),
    ("coh_torsion_eta1", ["coh", "torsion", fx("eta1_p2.json")], 0),
    ("coh_xiseq_eta12", ["coh", "xiseq", fx("eta1_eta2_p3.json"), "--s-max", "2"], 0),
    ("coh_deps_constant", ["coh", "deps", fx("constant_class_p3.json"), "--r-max", "2"], 0),
    ("coh_support_e3", ["coh", "support", fx("eta1_5_e3_p2.json")], 0),
    ("coh_witness_f2", ["coh", "witness", fx("rel_11.json"), "--digits", "[[1],[1]]", "--p", "2"], 0),
    ("coh_defect_p3", ["coh", "defect", fx("rel_1m1_p3.json"), "--digits", fx("digits_11_p3.json"),
                       "--n", "3", "--p", "3"], 0),
    ("coh_newton_vals", ["coh", "newton", "--vals", "1,0,0"], 0),
    ("coh_newton_stage", ["coh", "newton", "--relation", fx("rel_11.json"), "--digits", "[[1],[1]]",
                          "--n", "2", "--p", "2"], 0),
    ("coh_indices", ["coh", "indices", "--p", "2", "--e", "3", "--r", "1"], 0),
    ("indices_p2_e3", ["indices", "--p", "2", "--e", "3", "--r", "1"], 0),
    ("indices_p5_e6", ["indices", "--p", "5", "--e", "6", "--r", "1"], 0),
    ("parse_error", ["osc", fx("rel_11.json")], 2),
    ("missing_file", ["osc", fx("does_not_exist.json")], 2),
]


def run(argv, machine=False):
    cmd = [sys.executable, "-m", "axtower.cli"] + (["--machine"] if machine else []) + argv
    env = dict(os.environ)
    env.pop("AX_PRECISION", None)
    proc = subprocess.run(cmd, capture_output=True, env=env, cwd=HERE)
    return proc.returncode, proc.stdout, proc.stderr


def render(name, argv, machine):
    code, out, err = run(argv, machine)
    return b"exit=%d\n--- stdout\n%s--- stderr\n%s" % (code, out, err.replace(FIX.encode(), b"<fixtures>"))


def golden_path(name, machine):
    return os.path.join(GOLDEN, f"{name}{'.machine' if machine else ''}.txt")


if __name__ == "__main__" and "--regen" in sys.argv:
    os.makedirs(GOLDEN, exist_ok=True)
    for name, argv, _ in MATRIX:
        for machine in (False, True):
            with open(golden_path(name, machine), "wb") as fh:
                fh.write(render(name, argv, machine))
