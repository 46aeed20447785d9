"""The JSON command-line surface.

Every pipeline stage is exposed as a subcommand reading one JSON file and
writing a deterministic JSON report; repeated runs are byte-identical in
exact mode.
"""

import json
import pathlib
import tempfile

from colocal.cli import main

EXCLUSION = {"states": [0, 1], "base": 0,
             "phi": [[[0, 1], [1, 0]], [[1, 0], [0, 1]]]}

with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)

    conserved_in = tmp / "conserved.json"
    conserved_in.write_text(json.dumps(
        {"interaction": EXCLUSION, "nu": ["1/2", "1/2"]}))
    out = tmp / "conserved.out.json"
    main(["conserved", "--input", str(conserved_in), "--output", str(out)])
    print("conserved ->", out.read_text().strip()[:120], "...")

    varadhan_in = tmp / "varadhan.json"
    varadhan_in.write_text(json.dumps(
        {"interaction": EXCLUSION, "nu": ["1/2", "1/2"], "dim": 1,
         "window": {"lattice": {"dim": 1, "radius": 4}},
         "margin": 2, "cocycle": [["1"]]}))
    first, second = tmp / "v1.json", tmp / "v2.json"
    main(["varadhan", "--input", str(varadhan_in), "--output", str(first)])
    main(["varadhan", "--input", str(varadhan_in), "--output", str(second)])
    print("varadhan runs byte-identical:",
          first.read_bytes() == second.read_bytes())
    report = json.loads(first.read_text())
    print("recovered cocycle:", report["result"]["cocycle"]["generators"])

    # Domain errors exit 1 and carry the error name verbatim.
    bad = tmp / "bad.json"
    bad.write_text(json.dumps(
        {"interaction": EXCLUSION, "nu": ["1/2", "1/2"],
         "locale": {"sites": list(range(5)),
                    "edges": [[i, i + 1] for i in range(4)] +
                             [[i + 1, i] for i in range(4)]},
         "fn": {"siteset": list(range(5)), "values": ["1"] * 32}}))
    out_bad = tmp / "bad.out.json"
    code = main(["expand", "--input", str(bad), "--output", str(out_bad),
                 "--subset-cap", "4"])
    print("cap violation exit code:", code,
          "| error:", json.loads(out_bad.read_text())["error"]["name"])
