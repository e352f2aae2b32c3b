### Batch run over the GroupRep fixtures: every fixture is lifted at every precision and seed ###

# Command line arguments:
# 1. (optional) directory of GroupRep json files, defaults to data/group_reps

# For each run we record:
# 1. The decomposition type and the p-exponent b of the sigma action
# 2. The Jordan type of the pure unipotent part
# 3. Whether every verification check passed, or which hypothesis failed
# 4. Wall clock time of the pipeline
# Results are written as csv to experiments/experiment_data/<timestamp>/fixture_suite.csv

import json
import os
import sys
import time
from datetime import datetime

import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import EXPERIMENT_DATA_DIR, EXPERIMENT_DIR, GROUP_REP_FIXTURES_DIR
from errors import HypothesisError, InputError, InvariantViolation
from lifting.pipeline import assemble_mr_lift
from lifting.residual import ResidualGaloisData

with open(os.path.join(EXPERIMENT_DIR, "experiment_config.json")) as f:
    experiment_config = json.load(f)

fixture_dir = sys.argv[1] if len(sys.argv) > 1 else GROUP_REP_FIXTURES_DIR
this_experiment_dir = os.path.join(EXPERIMENT_DATA_DIR, datetime.now().strftime("%Y%m%d_%H%M%S"))
os.makedirs(this_experiment_dir, exist_ok=True)


def run_one(name: str, payload: dict, k: int, seed: int) -> dict:
    row = {"fixture": name, "p": payload["p"], "n": payload["n"], "q": payload["q"], "k": k, "seed": seed}
    start = time.perf_counter()
    try:
        data = ResidualGaloisData.from_dict({key: v for key, v in payload.items() if key != "k"}, seed)
        lift = assemble_mr_lift(data, k, seed)
        row.update(blocks=str(data.decomposition.isotypic.signatures), b=lift.b,
                   jordan_type=str(lift.jordan_type), all_passed=lift.verification.all_passed,
                   centralizer_rank=lift.verification.centralizer_rank_lift, failure="")
    except HypothesisError as err:
        row.update(all_passed=False, failure=err.hypothesis)
    except (InputError, InvariantViolation) as err:
        row.update(all_passed=False, failure=f"{type(err).__name__}: {err}")
    row["elapsed"] = round(time.perf_counter() - start, 4)
    return row


rows = []
for file_name in sorted(os.listdir(fixture_dir)):
    if not file_name.endswith(".json"):
        continue
    with open(os.path.join(fixture_dir, file_name)) as f:
        payload = json.load(f)
    for k in experiment_config["PRECISIONS"]:
        for seed in experiment_config["SEEDS"]:
            rows.append(run_one(file_name[:-5], payload, k, seed))
            print(f"{file_name} k={k} seed={seed}: {rows[-1]['failure'] or 'ok'} ({rows[-1]['elapsed']} s)")

df = pd.DataFrame(rows)
df.to_csv(os.path.join(this_experiment_dir, "fixture_suite.csv"), index=False)

# The lift must not depend on the seed: one verdict per (fixture, k)
verdicts = df.groupby(["fixture", "k"])["all_passed"].nunique()
print(f"Fixtures with seed dependent verdicts: {list(verdicts[verdicts > 1].index)}")
print(df.groupby("fixture")["elapsed"].describe()[["mean", "max"]])
