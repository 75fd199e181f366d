from rest_framework import serializers

from .ncalg import KINDS as PRESETS


class DegreeRequestSerializer(serializers.Serializer):
    """
    Serializer for the /degree/ endpoint request.

    The algebra is named by an AlgebraSpec string.
    """

    spec = serializers.CharField(help_text="Algebra spec such as 'frtbar:3', 'ohloc:2' or 'lup:1,1'")
    m = serializers.IntegerField(min_value=3, help_text="Odd order of the root of unity q")

    def validate_m(self, value):
        if value % 2 == 0:
            raise serializers.ValidationError("m must be odd")
        return value


class DegreeResponseSerializer(serializers.Serializer):
    spec = serializers.CharField(help_text="Normalised algebra spec")
    m = serializers.IntegerField(help_text="Order of the root of unity")
    degree = serializers.IntegerField(help_text="PI degree: product of m / gcd(m, m_i) over canonical blocks")
    blocks = serializers.ListField(child=serializers.IntegerField(), help_text="Canonical block sizes m_i")


class CanonRequestSerializer(serializers.Serializer):
    """
    Serializer for the /canon/ endpoint request.

    Exactly one of spec or matrix must be given.
    """

    spec = serializers.CharField(required=False, help_text="Algebra spec such as 'ldown:0,1'")
    matrix = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField()),
        required=False,
        help_text="Skew-symmetric integer matrix as a list of rows",
    )

    def validate(self, attrs):
        if ("spec" in attrs) == ("matrix" in attrs):
            raise serializers.ValidationError("Give exactly one of spec or matrix")
        return attrs


class NormalOrderRequestSerializer(serializers.Serializer):
    """
    Serializer for the /normal-order/ endpoint request.
    """

    preset = serializers.ChoiceField(choices=[k for k in PRESETS if k != "torus"], help_text="Algebra preset")
    N = serializers.IntegerField(min_value=1, help_text="Number of generator pairs")
    m = serializers.IntegerField(required=False, allow_null=True, help_text="Odd root of unity order, generic q if absent")
    expression = serializers.CharField(help_text="Expression such as 'zs0*z0'")

    def validate_expression(self, value):
        """Ensure the expression is not empty after stripping whitespace."""
        if not value.strip():
            raise serializers.ValidationError("Expression cannot be empty")
        return value.strip()


class PointRequestSerializer(serializers.Serializer):
    """
    Serializer for endpoints that take a point of the classical space.

    point lists a_0..a_{N-1} followed by a*_{N-1}..a*_0, comma separated.
    """

    N = serializers.IntegerField(min_value=1, help_text="Number of generator pairs")
    point = serializers.CharField(help_text="Comma separated rational coordinates, e.g. '1,1,-1,1'")


class DkpCheckRequestSerializer(PointRequestSerializer):
    m = serializers.IntegerField(min_value=3, help_text="Odd order of the root of unity q")
    oh = serializers.BooleanField(default=False, help_text="Check Oh's algebra instead of F_q(N)")


class LeafDimResponseSerializer(serializers.Serializer):
    structure = serializers.DictField(help_text="Structure data i_seq and r of the point")
    formula = serializers.IntegerField(help_text="Leaf dimension from the structure data")
    oracle = serializers.IntegerField(help_text="Rank of the Poisson matrix at the point")
    match = serializers.BooleanField(help_text="Whether the two agree")


class ErrorResponseSerializer(serializers.Serializer):
    """
    Serializer for error responses.
    """

    error = serializers.CharField(help_text="Error message")
    details = serializers.DictField(required=False, help_text="Additional error details")
