"""
Tests for the HTTP API.

Tests cover:
- Health check
- Degree, canonical form and normal form endpoints
- Leaf dimension and dimension check endpoints
- 400 for invalid requests, 422 for failed computations
"""

from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase


class HealthCheckTests(APITestCase):
    """Tests for the health endpoint."""

    def test_health_check(self):
        """Test that the health endpoint answers."""
        response = self.client.get(reverse("heisenberg:health"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["status"], "healthy")


class DegreeAPITests(APITestCase):
    """Tests for /api/degree/."""

    def setUp(self):
        self.url = reverse("heisenberg:degree")

    def test_frtbar_degree(self):
        """FRTbar(3) at m = 3 has degree 9."""
        response = self.client.post(self.url, {"spec": "frtbar:3", "m": 3}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["degree"], 9)
        self.assertEqual(response.data["spec"], "frtbar:3")

    def test_even_m(self):
        """Even m is rejected by the serializer."""
        response = self.client.post(self.url, {"spec": "frtbar:2", "m": 4}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("m", response.data["details"])

    def test_bad_spec(self):
        """Malformed specs are invalid input."""
        response = self.client.post(self.url, {"spec": "nonsense:1", "m": 3}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data["error"], "Invalid input")

    def test_missing_field(self):
        """spec is required."""
        response = self.client.post(self.url, {"m": 3}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("spec", response.data["details"])


class CanonAPITests(APITestCase):
    """Tests for /api/canon/."""

    def setUp(self):
        self.url = reverse("heisenberg:canon")

    def test_spec(self):
        """L_up(1,1) has blocks 1 and 4."""
        response = self.client.post(self.url, {"spec": "lup:1,1"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["blocks"], [1, 4])
        self.assertEqual(response.data["zero_count"], 0)

    def test_matrix(self):
        """An explicit 2x2 matrix with entry 3."""
        response = self.client.post(self.url, {"matrix": [[0, -3], [3, 0]]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["blocks"], [3])

    def test_not_skew(self):
        """A matrix that is not skew-symmetric is invalid input."""
        response = self.client.post(self.url, {"matrix": [[0, 1], [1, 0]]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_both_given(self):
        """spec and matrix exclude each other."""
        response = self.client.post(self.url, {"spec": "lup:1", "matrix": [[0]]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class NormalOrderAPITests(APITestCase):
    """Tests for /api/normal-order/."""

    def setUp(self):
        self.url = reverse("heisenberg:normal-order")

    def test_normal_order(self):
        """zs0*z0 in FRT(2)."""
        response = self.client.post(self.url, {"preset": "frt", "N": 2, "expression": "zs0*z0"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["text"], "z0*zs0 - (q^2-1)*z1*zs1")
        self.assertEqual(response.data["mode"], "generic")

    def test_syntax_error(self):
        """Unbalanced parentheses are invalid input."""
        response = self.client.post(self.url, {"preset": "frt", "N": 2, "expression": "z0*(zs0"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("line 1, column 8", response.data["details"]["message"])

    def test_empty_expression(self):
        """Whitespace-only expressions are rejected."""
        response = self.client.post(self.url, {"preset": "frt", "N": 2, "expression": "   "}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_not_invertible(self):
        """z0^-1 in FRT(2) fails with 422."""
        response = self.client.post(self.url, {"preset": "frt", "N": 2, "expression": "z0^-1"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertEqual(response.data["error"], "Computation failed")
        self.assertIn("DomainError", response.data["details"]["message"])


class PointAPITests(APITestCase):
    """Tests for /api/leaf-dim/ and /api/dkp-check/."""

    def test_leaf_dim(self):
        """(1,1,-1,1) lies on a 2-dimensional leaf."""
        response = self.client.post(reverse("heisenberg:leaf-dim"), {"N": 2, "point": "1,1,-1,1"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["formula"], 2)
        self.assertTrue(response.data["match"])

    def test_bad_point(self):
        """Three coordinates for N = 2."""
        response = self.client.post(reverse("heisenberg:leaf-dim"), {"N": 2, "point": "1,2,3"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_dkp_check(self):
        """(1,1,1,1) at m = 3."""
        response = self.client.post(reverse("heisenberg:dkp-check"), {"N": 2, "m": 3, "point": "1,1,1,1"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["rep_dim"], 3)
        self.assertEqual(response.data["torus"], "ldown:0,1")
        self.assertTrue(response.data["ok"])

    def test_dkp_check_oh(self):
        """Oh(1) at (1,1)."""
        response = self.client.post(
            reverse("heisenberg:dkp-check"), {"N": 1, "m": 3, "point": "1,1", "oh": True}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["torus"], "lup:1")
