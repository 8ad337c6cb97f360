import pytest
from hypothesis import given
from hypothesis import strategies as st

from nvmio_lab.devices import (
    DRAM,
    HDD,
    NVM,
    SSD,
    AccessPattern,
    DeviceProfile,
    MemoryProfile,
    builtin_profiles,
    service_time,
)


def test_builtin_profiles_match_reference_platform():
    profiles = builtin_profiles()
    assert set(profiles) == {"HDD", "SSD", "NVM"}
    assert (profiles["HDD"].bdw_seq, profiles["HDD"].bdw_ran) == (58.11, 26.72)
    assert (profiles["SSD"].bdw_seq, profiles["SSD"].bdw_ran) == (110.98, 101.86)
    assert (profiles["NVM"].bdw_seq, profiles["NVM"].bdw_ran) == (112.31, 110.51)


def test_dram_profile():
    assert DRAM.read_bw == 1000.0
    assert DRAM.write_bw == 900.0


def test_service_time_hdd_random_full_workload():
    # 16 GB at the HDD random bandwidth; published value is 613.17 s
    t = service_time(HDD, 16384.0, AccessPattern.RANDOM)
    assert t == 16384.0 / 26.72
    assert abs(t - 613.17) / 613.17 < 1e-4


def test_service_time_zero_data():
    for dev in (HDD, SSD, NVM):
        assert service_time(dev, 0.0, AccessPattern.SEQUENTIAL) == 0.0


def test_service_time_hand_arithmetic():
    assert service_time(HDD, 1024.0, AccessPattern.SEQUENTIAL) == 1024.0 / 58.11
    assert abs(service_time(HDD, 1024.0, AccessPattern.SEQUENTIAL) - 17.62) < 0.005


def test_service_time_rejects_negative_size():
    with pytest.raises(ValueError):
        service_time(HDD, -1.0, AccessPattern.RANDOM)


@pytest.mark.parametrize("dev", [HDD, SSD, NVM])
def test_random_never_faster_than_sequential(dev):
    for size in (0.5, 16.0, 16384.0):
        assert service_time(dev, size, AccessPattern.SEQUENTIAL) <= service_time(
            dev, size, AccessPattern.RANDOM
        )


@given(
    a=st.floats(min_value=0.0, max_value=1e6),
    b=st.floats(min_value=0.0, max_value=1e6),
    pattern=st.sampled_from(list(AccessPattern)),
)
def test_service_time_linear_in_size(a, b, pattern):
    whole = service_time(SSD, a + b, pattern)
    split = service_time(SSD, a, pattern) + service_time(SSD, b, pattern)
    assert whole == pytest.approx(split, rel=1e-12, abs=1e-300)


def test_profile_rejects_random_faster_than_sequential():
    with pytest.raises(ValueError):
        DeviceProfile("bad", bdw_seq=50.0, bdw_ran=60.0)


@pytest.mark.parametrize("seq,ran", [(0.0, 1.0), (10.0, 0.0), (-5.0, -6.0)])
def test_profile_rejects_nonpositive_bandwidths(seq, ran):
    with pytest.raises(ValueError):
        DeviceProfile("bad", bdw_seq=seq, bdw_ran=ran)


def test_memory_profile_must_dominate_devices():
    with pytest.raises(ValueError):
        MemoryProfile(read_bw=100.0, write_bw=100.0)
    with pytest.raises(ValueError):
        MemoryProfile(read_bw=0.0, write_bw=900.0)
    MemoryProfile(read_bw=120.0, write_bw=120.0)  # above every builtin bandwidth
