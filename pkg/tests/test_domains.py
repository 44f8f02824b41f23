import numpy as np
import pytest

from bsdkit.domains import (
    DomainSpec,
    borel_lift_iv,
    classify_point,
    format_spec,
    generic_norm,
    origin,
    parse_spec,
    point,
    polarized_norm,
    polarized_norm_is_squared,
    sample_point,
)
from bsdkit.errors import DomainError, ParameterError, ShapeError

ALL_SPECS = ["I:2,2", "I:2,3", "II:3", "II:4", "III:2", "III:3", "IV:2", "IV:3"]


class TestDomainSpec:
    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_parse_format_roundtrip(self, text):
        assert format_spec(parse_spec(text)) == text

    @pytest.mark.parametrize("text", ["I:3,2", "II:1", "V:3", "I:2", "III:0", "I:a,b"])
    def test_rejects_invalid(self, text):
        with pytest.raises(ParameterError):
            parse_spec(text)

    def test_shapes(self):
        assert parse_spec("I:2,3").shape == (2, 3)
        assert parse_spec("II:4").shape == (4, 4)
        assert parse_spec("IV:5").shape == (1, 5)


class TestPointValidation:
    def test_rejects_wrong_shape(self):
        with pytest.raises(ShapeError):
            point(parse_spec("I:2,3"), np.zeros((3, 2)))

    def test_rejects_non_antisymmetric_kind_ii(self):
        with pytest.raises(ShapeError):
            point(parse_spec("II:3"), np.eye(3))

    def test_rejects_non_symmetric_kind_iii(self):
        z = np.zeros((2, 2))
        z[0, 1] = 1.0
        with pytest.raises(ShapeError):
            point(parse_spec("III:2"), z)


class TestClassify:
    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_origin_is_interior_with_margin_one(self, text):
        cls = classify_point(origin(parse_spec(text)))
        assert cls.region == "interior"
        assert cls.margin == pytest.approx(1.0)

    def test_kind_i_boundary_at_unit_top_singular_value(self):
        spec = parse_spec("I:2,3")
        rng = np.random.default_rng(0)
        g = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
        z = point(spec, g / np.linalg.svd(g, compute_uv=False)[0])
        assert classify_point(z).region == "boundary"

    def test_kind_iv_real_axis(self):
        # for Z = (x, 0) real the norm is (1 - x^2)^2: boundary exactly at x = 1,
        # and beyond it the |Z|^2 < 1 condition is what rules the point out
        spec = parse_spec("IV:2")
        make = lambda x: point(spec, [[x, 0.0]])
        assert classify_point(make(0.5)).region == "interior"
        assert classify_point(make(1.0)).region == "boundary"
        assert classify_point(make(1.2)).region == "exterior"
        assert generic_norm(make(1.2)) > 0  # norm alone does not detect exteriority

    def test_scale_monotone(self):
        for text in ("I:2,2", "II:3", "III:2"):
            spec = parse_spec(text)
            z = sample_point(spec, "boundary", 5)
            shrunk = point(spec, 0.9 * z.value)
            assert classify_point(shrunk).region == "interior"


class TestGenericNorm:
    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_origin_value_is_one(self, text):
        assert generic_norm(origin(parse_spec(text))) == pytest.approx(1.0)

    def test_kind_ii_3x3_closed_form(self):
        a, b, c = 0.31 + 0.2j, -0.12 + 0.05j, 0.4 - 0.1j
        z = np.array([[0, a, b], [-a, 0, c], [-b, -c, 0]])
        expected = 1 - abs(a) ** 2 - abs(b) ** 2 - abs(c) ** 2
        assert generic_norm(point(parse_spec("II:3"), z)) == pytest.approx(expected)

    def test_kind_ii_2x2_closed_form(self):
        a = 0.6 - 0.3j
        z = np.array([[0, a], [-a, 0]])
        assert generic_norm(point(parse_spec("II:2"), z)) == pytest.approx(1 - abs(a) ** 2)

    def test_kind_ii_exterior_raises(self):
        a = 1.7
        z = np.array([[0, a], [-a, 0]])
        with pytest.raises(DomainError):
            generic_norm(point(parse_spec("II:2"), z))

    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_positive_interior_zero_boundary(self, text):
        spec = parse_spec(text)
        for k in range(10):
            assert generic_norm(sample_point(spec, "interior", [1, k])) > 0
            assert abs(generic_norm(sample_point(spec, "boundary", [2, k]))) <= 1e-9


class TestPolarizedNorm:
    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_w_zero_gives_one(self, text):
        spec = parse_spec(text)
        z = sample_point(spec, "interior", 3)
        assert polarized_norm(z, origin(spec)) == pytest.approx(1.0)

    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_diagonal_recovers_generic_norm(self, text):
        spec = parse_spec(text)
        z = sample_point(spec, "interior", 4)
        expected = generic_norm(z)
        if polarized_norm_is_squared(spec):
            expected = expected**2
        assert polarized_norm(z, z) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("text", ALL_SPECS)
    def test_hermitian_symmetry(self, text):
        spec = parse_spec(text)
        for k in range(25):
            z = sample_point(spec, "interior", [5, k])
            w = sample_point(spec, "interior", [6, k])
            assert polarized_norm(z, w) == pytest.approx(np.conj(polarized_norm(w, z)), abs=1e-12)

    def test_rejects_spec_mismatch(self):
        with pytest.raises(ShapeError):
            polarized_norm(origin(parse_spec("I:2,2")), origin(parse_spec("I:2,3")))

    @pytest.mark.parametrize("text", ["I:2,2", "II:3", "III:2", "IV:3"])
    def test_holomorphic_in_z(self, text):
        # Cauchy-Riemann residual via central differences in a source entry
        spec = parse_spec(text)
        z = sample_point(spec, "interior", 7)
        w = sample_point(spec, "interior", 8)
        h = 1e-5
        pos = (0, 1) if spec.kind != "IV" else (0, 0)

        def shifted(delta):
            v = z.value.copy()
            v[pos] += delta
            if spec.kind == "II":
                v[pos[1], pos[0]] -= delta
            elif spec.kind == "III" and pos[0] != pos[1]:
                v[pos[1], pos[0]] += delta
            return polarized_norm(point(spec, v), w)

        d_re = (shifted(h) - shifted(-h)) / (2 * h)
        d_im = (shifted(1j * h) - shifted(-1j * h)) / (2 * h)
        assert abs(d_re + 1j * d_im) / 2 <= 1e-6


class TestSamplers:
    @pytest.mark.parametrize("text", ALL_SPECS)
    @pytest.mark.parametrize("region", ["interior", "boundary"])
    def test_postcondition(self, text, region):
        spec = parse_spec(text)
        for k in range(10):
            p = sample_point(spec, region, [9, k])
            assert classify_point(p, 1e-9).region == region

    def test_kind_i_boundary_top_singular_value(self):
        p = sample_point(parse_spec("I:2,3"), "boundary", 10)
        top = np.linalg.svd(p.value, compute_uv=False)[0]
        assert abs(top - 1.0) <= 1e-12

    def test_kind_iv_boundary_solves_radial_quadratic(self):
        spec = parse_spec("IV:3")
        for k in range(20):
            p = sample_point(spec, "boundary", [11, k])
            assert abs(generic_norm(p)) <= 1e-10
            assert float(np.real(p.value @ p.value.conj().T)[0, 0]) <= 1.0 + 1e-12

    def test_deterministic(self):
        a = sample_point(parse_spec("III:3"), "interior", 99)
        b = sample_point(parse_spec("III:3"), "interior", 99)
        assert np.array_equal(a.value, b.value)

    def test_rejects_unknown_region(self):
        with pytest.raises(ParameterError):
            sample_point(parse_spec("I:2,2"), "surface", 0)


class TestBorelLift:
    def test_origin(self):
        lift = borel_lift_iv(origin(parse_spec("IV:3")))
        assert lift == pytest.approx(np.array([0, 0, 0, 1.0, 1j]))

    def test_quadric_and_signature_identities(self):
        spec = parse_spec("IV:4")
        for k in range(100):
            p = sample_point(spec, "interior" if k % 2 else "boundary", [12, k])
            lift = borel_lift_iv(p)
            assert abs(np.sum(lift**2)) <= 1e-12
            q = np.sum(np.abs(lift[:-2]) ** 2) - abs(lift[-2]) ** 2 - abs(lift[-1]) ** 2
            assert abs(q + 2 * generic_norm(p)) <= 1e-10

    def test_rejects_other_kinds(self):
        with pytest.raises(ShapeError):
            borel_lift_iv(origin(parse_spec("I:2,2")))
