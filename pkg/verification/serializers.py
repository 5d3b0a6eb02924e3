from rest_framework import serializers

from common.serializers import (
    EstimateSerializer,
    NPolynomialField,
    PairingField,
    RationalField,
)


class PairingListSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    count = serializers.SerializerMethodField()
    pairings = serializers.ListField(child=PairingField())

    def get_count(self, obj):
        return len(obj["pairings"])


class GramSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    n = serializers.IntegerField(required=False)
    ordering = serializers.ListField(child=PairingField())
    entries = serializers.ListField(child=serializers.ListField(child=serializers.CharField()))
    row_sum = NPolynomialField(required=False)


class MuSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    p_poly = NPolynomialField()
    n = serializers.IntegerField(required=False)
    mu = RationalField(required=False)


class CombinationField(serializers.Field):
    """Combinations as a map from compact pairing JSON to rational strings."""

    def to_representation(self, value):
        return value.to_json()


class ExpectationSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    n = serializers.IntegerField()
    blocks = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    zero = serializers.BooleanField()
    scalar = RationalField()
    combination = CombinationField()
    dense = serializers.ListField(child=serializers.FloatField(), required=False)


class SftSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    combination = CombinationField()
    n = serializers.IntegerField(required=False)
    vanishes = serializers.BooleanField(required=False)


class BasisSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    n = serializers.IntegerField()
    basis = serializers.ListField(child=PairingField())
    row_sums = serializers.ListField(child=RationalField())
    mu = RationalField()
    residual = RationalField()
    holds = serializers.BooleanField()


class MomentReportSerializer(serializers.Serializer):
    """Only the evaluators that were asked for appear in the report."""

    query = serializers.SerializerMethodField()
    n = serializers.IntegerField(source="query.n")
    theorem3 = RationalField(required=False)
    exact = RationalField(required=False)
    mc = EstimateSerializer(required=False)
    supported = serializers.ListField(child=serializers.CharField(), required=False)
    status = serializers.CharField(required=False)

    def get_query(self, obj):
        return obj["query"].to_json()


class CheckResultSerializer(serializers.Serializer):
    suite = serializers.CharField()
    name = serializers.CharField()
    status = serializers.CharField()
    details = serializers.JSONField()


class VerificationReportSerializer(serializers.Serializer):
    suite = serializers.CharField()
    seed = serializers.IntegerField()
    samples = serializers.IntegerField()
    workers = serializers.IntegerField()
    passed = serializers.BooleanField()
    counts = serializers.DictField(child=serializers.IntegerField())
    checks = CheckResultSerializer(many=True)
