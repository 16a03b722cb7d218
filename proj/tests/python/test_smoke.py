"""End-to-end smoke tests for the python bindings."""

import math

import systole


def test_arith():
    assert systole.kronecker(-4, 13) == 1
    assert systole.kronecker(-43, 2) == -1
    assert systole.nth_prime(6) == 13
    assert systole.crt([(1, 3), (3, 8)]) == ("19", "24")
    assert systole.factor(8633) == [("89", 1), ("97", 1)]


def test_quadfield():
    assert systole.fundamental_discriminant(-1) == -4
    assert systole.splitting_type(13, -43) == "split"
    assert systole.splitting_type(2, -43) == "inert"
    assert systole.class_number(-23) == 3
    assert systole.class_number(-23) == systole.class_number_analytic(-23)
    z = systole.zeta_k2(-1)
    assert abs(z["value"] - 1.5067030099229850) < 1e-9
    assert z["err"] < 1e-11
    assert systole.zeta_k2(-43)["value"] < 3.0


def test_covolume():
    assert systole.fuchsian_coarea_norm1("Q{}") == "1/3*pi"
    assert systole.fuchsian_coarea_norm1("Q{13,2}") == "4*pi"
    v = systole.kleinian_covol_norm1(-1, "")
    assert abs(v["value"] - 0.3053218647257397) < 1e-8
    assert systole.generalized_index(-43, "13") == "8"
    assert systole.sys1_upper(math.e**2) == math.log(math.e**2)
    assert systole.genus_range_from_area(4 * math.pi) == (2, 3)


def test_geodesic():
    ok, base = systole.has_tgs(-43, "13")
    assert ok and base == ["13"]
    spec = systole.tg_spectrum(-43, "13", 3)
    areas = [e["area"] for e in spec["spectrum"]]
    assert areas == ["4*pi", "8*pi", "16*pi"]
    assert spec["spectrum"][0]["witnesses"] == ["Q{2,13}"]
    assert systole.tg_area_lower(-43, "13") == "1/4*pi"
    big = systole.large_area_class(-43, 1.0)
    assert big["class"]["ram"] == ["17+", "17-"]


def test_family():
    assert systole.find_fields([13], [2, 3], 2) == [-43, -139]
    rep = systole.build_family(2, 5, 2)
    assert [m["class"]["D"] for m in rep["members"]] == [-43, -139]
    assert [e["area"] for e in rep["shared_spectrum"]] == ["4*pi", "8*pi"]
    assert rep["zeta_bound_ok"] is True


def test_census():
    rows = systole.ratio_table(-1, [1.0, 10.0], "1/2*pi")
    assert rows[0]["n_total"] == 1
    assert rows[0]["n_tg"] == 1
    assert rows[0]["ratio"] == "1"
    assert rows[1]["n_tg"] <= rows[1]["n_total"]
    assert systole.genus_threshold_translate(3.0) == "8*pi"


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
