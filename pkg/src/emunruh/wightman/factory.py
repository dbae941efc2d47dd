from ..frames import Family, KinematicParams
from .base import CorrelationTensor
from .boost_chain import BoostChainCorrelator
from .circular import CircularUltraCorrelator
from .thermal import ThermalCorrelator


def correlator_for(params: KinematicParams, images: int = 200) -> CorrelationTensor:
    """Production correlator for a trajectory family.

    Circular motion uses the ultrarelativistic closed forms, uniform
    acceleration uses the boost chain and static atoms use the thermal image
    sum at the bath temperature. Finite-speed circular correlators have no
    pole list and are only built directly, as a cross-check.
    """
    if params.family is Family.CIRCULAR:
        if params.v is not None:
            raise ValueError(
                f"no production correlator for circular motion at finite orbital speed v={params.v}; "
                "use CircularGeneralCorrelator directly for cross-checks"
            )
        return CircularUltraCorrelator(params.a, params.L)
    if params.family is Family.UNIFORM:
        return BoostChainCorrelator(params)
    return ThermalCorrelator(params.bath_temperature, params.L, images)
