#!/usr/bin/env python3
"""Write the JSON schemas of the analysis report and the diagram document."""

import json
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.report.models import AnalysisReport, DiagramDocument

SCHEMA_DIR = Path(__file__).parent.parent / "schema"


def main():
    SCHEMA_DIR.mkdir(exist_ok=True)
    for name, model in (("loja-report-1.json", AnalysisReport), ("loja-diagram-1.json", DiagramDocument)):
        path = SCHEMA_DIR / name
        path.write_text(json.dumps(model.model_json_schema(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
