from fractions import Fraction

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from combinat.pairings import Pairing
from common.exceptions import ArgumentError


class RationalField(serializers.Field):
    """Exact rationals as reduced "p/q" strings ("3/8", "0", "-1/5")."""

    default_error_messages = {"invalid": 'Expected a rational such as "3/8".'}

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            self.fail("invalid")


class PairingField(serializers.Field):
    """Pairings as 1-based lists of pairs, e.g. [[1,2],[3,4]]."""

    default_error_messages = {"invalid": "Expected a pairing such as [[1,2],[3,4]]."}

    def to_representation(self, value):
        return value.to_json()

    def to_internal_value(self, data):
        try:
            return Pairing.from_json(data)
        except (ArgumentError, TypeError, ValueError):
            self.fail("invalid")


class NPolynomialField(serializers.Field):
    def to_representation(self, value):
        return str(value)


class EstimateSerializer(serializers.Serializer):
    mean = serializers.FloatField()
    stderr = serializers.FloatField()
    samples = serializers.IntegerField()
    seed = serializers.IntegerField()
    workers = serializers.IntegerField()


def render_json(data) -> str:
    return JSONRenderer().render(data).decode("utf-8")
