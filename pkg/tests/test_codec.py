import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from msis.codec import (
    SecretGroup,
    ShareContainer,
    build_pad,
    decode_batch,
    decode_group,
    decrypt_image,
    encode_batch,
    encode_group,
    encrypt_image,
    pack_group,
    sharing_capacity,
    unpack_group,
)
from msis.errors import (
    ClearTailWarning,
    DimensionInconsistency,
    DimensionMismatch,
    EmptyInput,
    LengthMismatch,
    NotSquare,
    SideMismatch,
)
from msis.keygen import SecurityKey, derive_key

import naive_msis


def rand_images(rng, n, shape=(8, 8)):
    return [rng.integers(0, 256, shape, dtype=np.uint8) for _ in range(n)]


def flat(a):
    return np.asarray(a).ravel().tolist()


class TestBuildPad:
    def test_zero_comparison(self):
        pad = build_pad(np.zeros((3, 5), dtype=np.uint8), SecurityKey.parse("70452316"), 16)
        assert pad.tolist() == [0] * 16

    def test_all_ones(self):
        pad = build_pad([[255]], SecurityKey.parse("31204567"), 8)
        assert pad.tolist() == [1] * 8

    def test_key_order_178(self):
        # 178 = 0b10110010 read as planes 7,0,4,5,2,3,1,6
        pad = build_pad([[178]], SecurityKey.parse("70452316"), 8)
        assert pad.tolist() == [1, 0, 1, 1, 0, 0, 1, 0]

    def test_planes_laid_side_by_side(self):
        comp = np.array([[1, 2]], dtype=np.uint8)
        pad = build_pad(comp, SecurityKey.parse("01234567"), 16)
        # plane 0 of (1, 2) then plane 1 of (1, 2), then zeros
        assert pad.tolist() == [1, 0, 0, 1] + [0] * 12

    def test_truncates_and_pads(self):
        comp = np.full((2, 2), 255, dtype=np.uint8)
        key = derive_key(comp)
        assert build_pad(comp, key, 5).tolist() == [1] * 5
        assert build_pad(comp, key, 40).tolist() == [1] * 32 + [0] * 8


class TestEncryptDecrypt:
    def test_zero_pad_identity(self):
        plane = encrypt_image([[178]], np.zeros(8, dtype=np.uint8))
        assert plane.shape == (3, 3)
        assert flat(plane) == [1, 0, 1, 1, 0, 0, 1, 0, 0]

    def test_ones_pad_complements(self):
        plane = encrypt_image([[178]], np.ones(8, dtype=np.uint8))
        assert flat(plane) == [0, 1, 0, 0, 1, 1, 0, 1, 0]
        assert int("01001101", 2) == 255 - 178

    def test_decrypt_examples(self):
        plane = np.array([0, 1, 0, 0, 1, 1, 0, 1, 0], dtype=np.uint8).reshape(3, 3)
        assert decrypt_image(plane, np.ones(8, dtype=np.uint8), 1, 1).tolist() == [[178]]
        zero = np.zeros((3, 3), dtype=np.uint8)
        assert decrypt_image(zero, np.zeros(8, dtype=np.uint8), 1, 1).tolist() == [[0]]

    def test_pad_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            encrypt_image([[1]], np.zeros(7, dtype=np.uint8))
        with pytest.raises(LengthMismatch):
            decrypt_image(np.zeros((3, 3)), np.zeros(7, dtype=np.uint8), 1, 1)

    @given(arrays(np.uint8, (8, 8)), arrays(np.uint8, 512, elements=st.integers(0, 1)))
    def test_round_trip(self, secret, pad):
        assert np.array_equal(decrypt_image(encrypt_image(secret, pad), pad, 8, 8), secret)


class TestPacking:
    def test_plane_zero_is_msb(self):
        planes = [np.ones((4, 4), np.uint8)] + [np.zeros((4, 4), np.uint8)] * 7
        assert (pack_group(planes) == 128).all()

    def test_all_ones(self):
        assert (pack_group([np.ones((2, 2), np.uint8)] * 8) == 255).all()

    def test_single_pixel_value(self):
        planes = [np.array([[b]], np.uint8) for b in (1, 0, 1, 1, 0, 0, 1, 0)]
        assert pack_group(planes).tolist() == [[178]]

    def test_side_mismatch(self):
        planes = [np.zeros((2, 2), np.uint8)] * 7 + [np.zeros((3, 3), np.uint8)]
        with pytest.raises(SideMismatch):
            pack_group(planes)

    def test_unpack_examples(self):
        planes = unpack_group(np.full((3, 3), 128, np.uint8))
        assert planes[0].all() and not any(p.any() for p in planes[1:])
        assert not any(p.any() for p in unpack_group(np.zeros((2, 2), np.uint8)))

    def test_unpack_not_square(self):
        with pytest.raises(NotSquare):
            unpack_group(np.zeros((2, 3), np.uint8))

    @given(st.integers(1, 9).flatmap(
        lambda s: arrays(np.uint8, (8, s, s), elements=st.integers(0, 1))))
    def test_round_trip(self, stack):
        assert np.array_equal(np.stack(unpack_group(pack_group(list(stack)))), stack)


class TestGroup:
    def test_null_group(self):
        rng = np.random.default_rng(3)
        comp = rng.integers(0, 256, (8, 8), dtype=np.uint8)
        group = SecretGroup([np.zeros((4, 4), np.uint8)] * 8)
        c = encode_group(group, comp)
        pad = build_pad(comp, derive_key(comp), 128)
        pad_plane = np.zeros(c.share.size, np.uint8)
        pad_plane[:128] = pad
        assert np.array_equal(unpack_group(c.share)[3].ravel(), pad_plane)
        assert set(np.unique(c.share)) <= {0, 255}
        assert all(not img.any() for img in decode_group(c, comp).images)

    def test_identical_secrets_give_extreme_pixels(self):
        rng = np.random.default_rng(4)
        secret, comp = rand_images(rng, 2, (16, 16))
        c = encode_group(SecretGroup([secret] * 8), comp)
        assert set(np.unique(c.share).tolist()) <= {0, 255}

    def test_eight_in_one_share_out(self):
        rng = np.random.default_rng(5)
        secrets = rand_images(rng, 8, (64, 64))
        comp = rng.integers(0, 256, (128, 128), dtype=np.uint8)
        c = encode_group(SecretGroup(secrets), comp)
        assert c.share.shape == (182, 182)
        assert c.bit_length == 32768
        assert decode_group(c, comp) == SecretGroup(secrets)

    def test_wrong_comparison_gives_garbage(self):
        rng = np.random.default_rng(6)
        secrets = rand_images(rng, 8)
        comp, other = rand_images(rng, 2, (16, 16))
        c = encode_group(SecretGroup(secrets), comp)
        recovered = decode_group(c, other).images
        assert all(not np.array_equal(a, b) for a, b in zip(secrets, recovered))

    def test_mixed_sizes(self):
        imgs = [np.zeros((4, 4), np.uint8)] * 7 + [np.zeros((4, 5), np.uint8)]
        with pytest.raises(DimensionMismatch):
            SecretGroup(imgs)

    def test_from_images_pads(self):
        g = SecretGroup.from_images([np.ones((2, 3), np.uint8)] * 3)
        assert g.num_real == 3 and len(g.images) == 8
        assert (g.width, g.height) == (3, 2)
        assert not any(img.any() for img in g.images[3:])

    def test_decode_rejects_inconsistent_header(self):
        c = ShareContainer(4, 4, 8, np.zeros((11, 11), np.uint8))
        with pytest.raises(DimensionInconsistency):
            decode_group(c, [[1]])

    def test_deterministic(self):
        rng = np.random.default_rng(8)
        secrets = rand_images(rng, 8)
        comp = rng.integers(0, 256, (9, 9), dtype=np.uint8)
        a = encode_group(SecretGroup(secrets), comp)
        b = encode_group(SecretGroup([s.copy() for s in secrets]), comp.copy())
        assert a == b and a.share.tobytes() == b.share.tobytes()

    def test_minimal_square(self):
        for w, h in [(1, 1), (3, 5), (8, 8), (17, 2)]:
            comp = np.arange(w * h, dtype=np.uint8).reshape(h, w)
            c = encode_group(SecretGroup.from_images([np.zeros((h, w), np.uint8)]), comp)
            side = c.share_side
            assert 0 <= side * side - 8 * w * h < 2 * side + 1


class TestBatch:
    @pytest.mark.parametrize("n, groups", [(1, 1), (8, 1), (9, 2), (16, 2), (17, 3)])
    def test_container_count(self, n, groups):
        rng = np.random.default_rng(n)
        secrets = rand_images(rng, n, (4, 4))
        comp = rng.integers(0, 256, (16, 16), dtype=np.uint8)
        containers = encode_batch(secrets, comp)
        assert len(containers) == groups == math.ceil(n / 8)
        assert [c.num_real for c in containers][-1] == n - 8 * (groups - 1)
        recovered = decode_batch(containers, comp)
        assert len(recovered) == n
        assert all(np.array_equal(a, b) for a, b in zip(secrets, recovered))

    def test_capacity(self):
        assert sharing_capacity(8) == 8
        assert sharing_capacity(16) == 8
        assert sharing_capacity(9) == 4.5

    def test_empty(self):
        with pytest.raises(EmptyInput):
            encode_batch([], [[1]])
        assert decode_batch([], [[1]]) == []

    def test_mixed_sizes(self):
        with pytest.raises(DimensionMismatch):
            encode_batch([np.zeros((2, 2), np.uint8), np.zeros((3, 2), np.uint8)], [[1]])

    def test_num_real_respected(self):
        rng = np.random.default_rng(10)
        comp = rng.integers(0, 256, (8, 8), dtype=np.uint8)
        (c,) = encode_batch(rand_images(rng, 3), comp)
        assert c.num_real == 3
        assert len(decode_batch([c], comp)) == 3

    def test_clear_tail_warning(self):
        rng = np.random.default_rng(11)
        secrets = rand_images(rng, 9, (8, 8))
        small = rng.integers(0, 256, (4, 4), dtype=np.uint8)
        with pytest.warns(ClearTailWarning) as record:
            containers = encode_batch(secrets, small)
        assert len([w for w in record if w.category is ClearTailWarning]) == 1
        recovered = decode_batch(containers, small)
        assert all(np.array_equal(a, b) for a, b in zip(secrets, recovered))

    def test_no_warning_when_comparison_large_enough(self):
        rng = np.random.default_rng(12)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            encode_batch(rand_images(rng, 2), rng.integers(0, 256, (8, 8), dtype=np.uint8))


@settings(max_examples=40, deadline=None)
@given(
    st.tuples(st.integers(1, 6), st.integers(1, 6)),
    st.tuples(st.integers(1, 10), st.integers(1, 10)),
    st.integers(0, 2**32 - 1),
)
def test_matches_naive_reference(secret_shape, comp_shape, seed):
    rng = np.random.default_rng(seed)
    secrets = rand_images(rng, 8, secret_shape)
    comp = rng.integers(0, 256, comp_shape, dtype=np.uint8)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ClearTailWarning)
        c = encode_group(SecretGroup(secrets), comp)
    naive_share = naive_msis.encode([s.tolist() for s in secrets], comp.tolist())
    assert c.share.tolist() == naive_share
    h, w = secret_shape
    naive_out = naive_msis.decode(naive_share, comp.tolist(), w, h)
    assert naive_out == [s.tolist() for s in secrets]
