import logging

from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import APIView

from .cli import INPUT_ERRORS
from .coeff import GENERIC, Mode
from .exceptions import HeisenbergError
from .expressions import evaluate_text, format_element
from .ncalg import AlgebraPreset
from .poisson import PointData, leaf_dimension, rank, structure_data
from .reps import dkp_check, oh_dkp_check
from .serializers import (
    CanonRequestSerializer,
    DegreeRequestSerializer,
    DegreeResponseSerializer,
    DkpCheckRequestSerializer,
    ErrorResponseSerializer,
    LeafDimResponseSerializer,
    NormalOrderRequestSerializer,
    PointRequestSerializer,
)
from .skewnf import AlgebraSpec, SkewMatrix, build_matrix, canonical_form, degree

logger = logging.getLogger(__name__)


class ComputationView(APIView):
    """
    POST endpoint running one library computation.

    Subclasses set request_serializer and implement compute(validated_data),
    which returns the response payload. Invalid requests and malformed input
    give 400, other library errors 422.
    """

    request_serializer = None

    def compute(self, data):
        raise NotImplementedError

    def post(self, request):
        name = self.__class__.__name__
        try:
            input_serializer = self.request_serializer(data=request.data)
            if not input_serializer.is_valid():
                return Response(
                    {"error": "Invalid input", "details": input_serializer.errors},
                    status=status.HTTP_400_BAD_REQUEST,
                )
            payload = self.compute(input_serializer.validated_data)
            return Response(payload, status=status.HTTP_200_OK)

        except INPUT_ERRORS as e:
            logger.warning(f"Rejected input in {name}: {e}")
            return Response(
                {"error": "Invalid input", "details": {"message": str(e)}},
                status=status.HTTP_400_BAD_REQUEST,
            )

        except HeisenbergError as e:
            logger.error(f"Computation failed in {name}: {e}", exc_info=True)
            return Response(
                {"error": "Computation failed", "details": {"message": f"{type(e).__name__}: {e}"}},
                status=status.HTTP_422_UNPROCESSABLE_ENTITY,
            )

        except Exception as e:
            logger.error(f"Error in {name}: {e}", exc_info=True)
            error_serializer = ErrorResponseSerializer(data={"error": "Internal server error", "details": {"message": str(e)}})
            error_serializer.is_valid()
            return Response(
                error_serializer.validated_data,
                status=status.HTTP_500_INTERNAL_SERVER_ERROR,
            )


class DegreeView(ComputationView):
    """
    POST /api/degree/

    Request:
    {
        "spec": "frtbar:3",
        "m": 3
    }

    Response:
    {
        "spec": "frtbar:3",
        "m": 3,
        "degree": 9,
        "blocks": [1, 2]
    }
    """

    request_serializer = DegreeRequestSerializer

    def compute(self, data):
        spec = AlgebraSpec.parse(data["spec"])
        H = build_matrix(spec)
        response_data = {
            "spec": str(spec),
            "m": data["m"],
            "degree": degree(H, data["m"]),
            "blocks": list(canonical_form(H).blocks),
        }
        output_serializer = DegreeResponseSerializer(data=response_data)
        output_serializer.is_valid(raise_exception=True)
        logger.info(f"Degree of {spec} at m={data['m']}: {response_data['degree']}")
        return output_serializer.validated_data


class CanonView(ComputationView):
    """
    POST /api/canon/

    Request: {"spec": "lup:1,1"} or {"matrix": [[0, -1], [1, 0]]}

    Response: {"blocks": [...], "zero_count": k, "orientation": 1, "W": [[...], ...]}
    """

    request_serializer = CanonRequestSerializer

    def compute(self, data):
        if "matrix" in data:
            H = SkewMatrix.from_rows(data["matrix"])
        else:
            H = build_matrix(AlgebraSpec.parse(data["spec"]))
        form = canonical_form(H)
        return {
            "blocks": list(form.blocks),
            "zero_count": form.zero_count,
            "orientation": form.orientation,
            "W": [list(row) for row in form.W],
        }


class NormalOrderView(ComputationView):
    """
    POST /api/normal-order/

    Request:
    {
        "preset": "frt",
        "N": 2,
        "expression": "zs0*z0"
    }

    Response:
    {
        "algebra": "frt(2)",
        "mode": "generic",
        "text": "z0*zs0 - (q^2-1)*z1*zs1",
        "terms": [...]
    }
    """

    request_serializer = NormalOrderRequestSerializer

    def compute(self, data):
        algebra = AlgebraPreset.from_name(data["preset"], data["N"])
        mode = GENERIC if data.get("m") is None else Mode.root_of_unity(data["m"])
        element = evaluate_text(data["expression"], algebra, mode)
        return {
            "algebra": algebra.label,
            "mode": str(mode),
            "text": format_element(element),
            "terms": element.to_json(),
        }


class LeafDimView(ComputationView):
    """
    POST /api/leaf-dim/

    Request: {"N": 2, "point": "1,1,1,1"}

    Response: {"structure": {...}, "formula": 2, "oracle": 2, "match": true}
    """

    request_serializer = PointRequestSerializer

    def compute(self, data):
        point = PointData.parse(data["N"], data["point"])
        structure = structure_data(point)
        formula, oracle = leaf_dimension(structure), rank(point)
        output_serializer = LeafDimResponseSerializer(
            data={"structure": structure.to_json(), "formula": formula, "oracle": oracle, "match": formula == oracle}
        )
        output_serializer.is_valid(raise_exception=True)
        return output_serializer.validated_data


class DkpCheckView(ComputationView):
    """
    POST /api/dkp-check/

    Request: {"N": 2, "m": 3, "point": "1,1,1,1"}

    Response: the dimension report, with "ok" telling whether the
    irreducible dimension equals m^(leaf dimension / 2).
    """

    request_serializer = DkpCheckRequestSerializer

    def compute(self, data):
        point = PointData.parse(data["N"], data["point"])
        if data["oh"]:
            report = oh_dkp_check(point, data["m"])
        else:
            report = dkp_check(structure_data(point), data["m"], oracle_dim=rank(point))
        return report.to_json()


class HealthCheckView(APIView):
    """
    GET /api/health/

    Simple health check endpoint to verify the service is running.
    """

    def get(self, request):
        """Return a simple health status."""
        return Response({"status": "healthy"}, status=status.HTTP_200_OK)
