"""Tests for the HTTP service endpoints."""

import pytest
from fastapi.testclient import TestClient

from gradedsk.service.app import app

client = TestClient(app)

TOT_RAM = {
    "ring": {
        "q": 5,
        "m": 1,
        "n": 4,
        "sigma": [0, 0, 0, 0],
        "r": [2, 2, 2, 2],
        "b": [0, 0, 0, 0],
        "u": [[0, 2, 0, 0], [2, 0, 0, 0], [0, 0, 0, 2], [0, 0, 2, 0]],
    }
}

SEMI = {
    "ring": {"q": 3, "m": 2, "n": 1, "sigma": [1], "r": [2], "b": [0], "u": [[0]]}
}


def test_healthz():
    res = client.get("/healthz")
    assert res.status_code == 200
    assert res.json()["status"] == "ok"


def test_classify_endpoint():
    res = client.post("/classify", json=TOT_RAM)
    assert res.status_code == 200
    body = res.json()
    assert body["classification"] == "TotallyRamified"
    assert body["index"] == 4


def test_sk1_endpoint_totally_ramified():
    res = client.post("/sk1", json=TOT_RAM)
    assert res.status_code == 200
    body = res.json()
    assert body["sk1"]["invariant_factors"] == [2]
    assert body["method"] == "TotallyRamifiedMu"
    assert body["checks"]["n_torsion"] is True


def test_sk1_brute_agrees():
    formula = client.post("/sk1", json=TOT_RAM).json()
    brute = client.post("/sk1-brute", json=TOT_RAM).json()
    assert formula["sk1"] == brute["sk1"]


def test_sk1_semiramified():
    res = client.post("/sk1", json=SEMI)
    assert res.status_code == 200
    body = res.json()
    assert body["classification"] == "Semiramified"
    assert body["sk1"]["invariant_factors"] == []
    assert body["method"] == "NicelySemiramified"


def test_sk1_descriptor_input():
    payload = {
        "descriptor": {
            "kind": "descriptor",
            "gamma_rank": 1,
            "gamma_T": [[1]],
            "residue": {"type": "finite_field", "q": 3, "ext_degree": 4, "center_degree": 4},
            "index": 2,
        }
    }
    res = client.post("/sk1", json=payload)
    assert res.status_code == 200
    assert res.json()["method"] == "UnramifiedTransfer"
    assert res.json()["sk1"]["invariant_factors"] == []


def test_ck1_endpoint():
    res = client.post("/ck1", json=TOT_RAM)
    assert res.status_code == 200
    assert res.json()["group"]["invariant_factors"] == [2, 2, 2, 2]


def test_sh1_endpoint():
    res = client.post("/sh1", json=SEMI)
    assert res.status_code == 200
    assert res.json()["group"]["invariant_factors"] == []


def test_nondegenerate_endpoint_module():
    payload = {
        "module": {
            "group": [2, 2],
            "generators": 4,
            "relations": [],
            "actions": [
                [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
            ],
            "u": {"0,1": [-1, 1, -1, 0]},
        }
    }
    res = client.post("/nondegenerate", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert body["nondegenerate"] is True
    assert len(body["certificates"]) == 1


def test_skew_divisor_endpoint():
    payload = {"ring": {"q": 3, "m": 2, "s": 1}, "poly": "x^4 + g^0"}
    res = client.post("/skew/divisor", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert body["total_degree"] == 4
    assert body["module_route_agrees"] is True


def test_skew_reduce_endpoint():
    payload = {"ring": {"q": 3, "m": 2, "s": 1}, "f": "x^2 + g^0", "g": "x^2 + g^0"}
    res = client.post("/skew/reduce", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert body["scalar_dlog"] == 0
    assert body["certificate_ok"] is True


def test_hensel_endpoint():
    payload = {
        "q": 5,
        "lam": "0",
        "mode": "factor",
        "poly": ["t^0 * (4 + 4*t) [prec=inf]", "0", "t^0 * (1) [prec=inf]"],
        "g": [{"power": 0, "scalar": 4, "degree": "0"}, {"power": 1, "scalar": 1, "degree": "0"}],
        "h": [{"power": 0, "scalar": 1, "degree": "0"}, {"power": 1, "scalar": 1, "degree": "0"}],
    }
    res = client.post("/hensel", json=payload)
    assert res.status_code == 200
    assert res.json()["product_matches"] is True


def test_norm_preimage_endpoint():
    payload = {
        "q": 5,
        "tower": [{"kind": "unramified", "degree": 2}],
        "target": "t^0 * (1 + 1*t) [prec=inf]",
    }
    res = client.post("/norm-preimage", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert body["verified"] is True
    assert body["achieved_precision"] >= 32


def test_wedderburn_endpoint():
    payload = {
        "ring": {"q": 3, "m": 2, "n": 1, "sigma": [1], "r": [2], "b": [0], "u": [[0]]},
        "element": {"coeff": 1, "degree": [0]},
    }
    res = client.post("/wedderburn", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert len(body["factors"]) == 2


def test_congruence_endpoint():
    payload = {"q": 3, "ell": 2, "s": 1, "element": "t^0 * (1 + 1*t) [prec=24]"}
    res = client.post("/congruence-check", json=payload)
    assert res.status_code == 200
    body = res.json()
    assert body["witness"]["diagonal_product_is_one_unit"] is True
    assert body["diag_consistency"]["match"] is True


def test_unsupported_case_is_422():
    payload = {
        "ring": {
            "q": 5,
            "m": 2,
            "n": 3,
            "sigma": [1, 0, 0],
            "r": [2, 2, 2],
            "b": [0, 0, 0],
            "u": [[0, 0, 0], [0, 0, 12], [0, 12, 0]],
        }
    }
    res = client.post("/sk1", json=payload)
    assert res.status_code == 422


def test_bad_schema_is_422_entity():
    res = client.post("/sk1", json={"nonsense": 1})
    assert res.status_code in (400, 422)
