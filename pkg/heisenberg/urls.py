"""
URL configuration for heisenberg.
"""

from django.urls import path

from .views import CanonView, DegreeView, DkpCheckView, HealthCheckView, LeafDimView, NormalOrderView

app_name = "heisenberg"

urlpatterns = [
    path("api/health/", HealthCheckView.as_view(), name="health"),
    path("api/degree/", DegreeView.as_view(), name="degree"),
    path("api/canon/", CanonView.as_view(), name="canon"),
    path("api/normal-order/", NormalOrderView.as_view(), name="normal-order"),
    path("api/leaf-dim/", LeafDimView.as_view(), name="leaf-dim"),
    path("api/dkp-check/", DkpCheckView.as_view(), name="dkp-check"),
]
