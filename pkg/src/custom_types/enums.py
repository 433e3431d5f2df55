from enum import Enum, EnumMeta


class MetaEnum(EnumMeta):
    def __contains__(self, item):
        if isinstance(item, Enum):
            return item in self.__members__.values()
        # Check the values of the members, so raw config strings can be tested
        for member in self.__members__.values():
            if item == member.value:
                return True
        return False


class BaseEnum(Enum, metaclass=MetaEnum):
    def __str__(self):
        return str(self.value)


class RingMode(BaseEnum):
    PER_CHANNEL_RINGS = "per-channel-rings"
    SPATIAL_ONLY_RINGS = "spatial-only-rings"


class AdcMode(BaseEnum):
    PER_KERNEL = "per-kernel"
    FIXED = "fixed"


class Stage(BaseEnum):
    DAC = "dac"
    ADC = "adc"
    OPTICAL = "optical"


class SweepAxis(BaseEnum):
    K = "k"
    N_INPUT_DAC = "n_input_dac"
    F_DAC = "f_dac"
    BITS = "bits"


class OutputFormat(BaseEnum):
    CSV = "csv"
    TABLE = "table"
    STRUCTURED_TEXT = "structured-text"


class Command(BaseEnum):
    REPORT = "report"
    SIMULATE = "simulate"
    SWEEP = "sweep"
