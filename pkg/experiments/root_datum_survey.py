### Survey of the prime conditions over a list of root data ###

# For every type in experiment_config.json and every isogeny class we record the bad primes, the
# pretty-good violations, the component constant, the effective prime bound and the number of
# Bala-Carter labels. Results are written as csv to experiments/experiment_data/<timestamp>/root_datum_survey.csv

import json
import os
import sys
from datetime import datetime

import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from cli.main import root_datum_payload
from config import EXPERIMENT_DATA_DIR, EXPERIMENT_DIR

with open(os.path.join(EXPERIMENT_DIR, "experiment_config.json")) as f:
    experiment_config = json.load(f)

this_experiment_dir = os.path.join(EXPERIMENT_DATA_DIR, datetime.now().strftime("%Y%m%d_%H%M%S"))
os.makedirs(this_experiment_dir, exist_ok=True)

rows = []
for type_string in experiment_config["ROOT_DATUM_TYPES"]:
    isogenies = ["preset"] if type_string.startswith("GLn") else experiment_config["ISOGENIES"]
    for isogeny in isogenies:
        payload = root_datum_payload(type_string, isogeny)
        primes = payload.primes
        rows.append({
            "type": payload.type,
            "isogeny": payload.isogeny,
            "weyl_order": payload.weyl_order,
            "bad_primes": primes["bad_primes_good"],
            "not_pretty_good": primes["bad_primes_pretty_good"],
            "pi1_primes": primes["pi1_primes"],
            "cG": payload.cG,
            "improved_constant": primes["improved_constant"],
            "effective_min_p": payload.effective_min_p,
            "bala_carter_labels": len(payload.bala_carter),
            "fallback_labels": sum(row.fallback for row in payload.bala_carter),
        })
        print(f"{payload.type} ({payload.isogeny}): effective p >= {payload.effective_min_p}")

df = pd.DataFrame(rows)
df.to_csv(os.path.join(this_experiment_dir, "root_datum_survey.csv"), index=False)
print(df.to_string(index=False))
