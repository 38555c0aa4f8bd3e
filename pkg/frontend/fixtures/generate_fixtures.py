"""Regenerate the golden JSON fixtures for the web client tests.

Run from the repository root with the Python package installed:

    python frontend/fixtures/generate_fixtures.py

Fixtures are the exact server payload shapes; the client tests must never
recompute analytics, only assert against these.
"""

import json
import pathlib

from flowcast import generate, markov_spec
from flowcast.payloads import network_payload

HERE = pathlib.Path(__file__).parent


def main() -> None:
    panel = generate(markov_spec(seed=1))

    # dense, fully recovered network (synthetic data: Box-Cox skipped)
    golden = network_payload(panel, 0.45, gamma=None)
    (HERE / "network_golden.json").write_text(
        json.dumps(golden, indent=2) + "\n", encoding="utf-8"
    )

    # one frame per lambda slider step over its full range
    frames = [
        network_payload(panel, round(0.7 + 0.01 * i, 2), gamma=None) for i in range(31)
    ]
    (HERE / "network_lambda_sweep.json").write_text(
        json.dumps(frames, indent=2) + "\n", encoding="utf-8"
    )


if __name__ == "__main__":
    main()
