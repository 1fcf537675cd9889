import numpy as np

from tensorial.harness.synthetic import block_labels, class_signatures, face_images, labeled_cube, sample_image


def test_test_image_is_8bit_and_seeded():
    img = sample_image()
    assert img.shape == (64, 64)
    assert img.min() >= 0 and img.max() <= 255
    assert np.array_equal(img, np.rint(img))
    assert np.array_equal(img, sample_image())
    assert not np.array_equal(img, sample_image(seed=1))


def test_faces():
    faces = face_images(6, seed=2)
    assert len(faces) == 6 and faces[0].shape == (28, 23)
    assert all(np.array_equal(a, b) for a, b in zip(faces, face_images(6, seed=2)))


def test_labeled_cube():
    lc = labeled_cube()
    assert lc.cube.shape == (30, 30, 8)
    assert lc.num_classes == 3
    assert sorted(np.unique(lc.labels)) == [0, 1, 2, 3]
    assert np.array_equal(lc.cube, labeled_cube().cube)


def test_signatures_independent():
    sigs = class_signatures(8, 3)
    assert np.linalg.matrix_rank(sigs) == 3
    assert np.all(sigs > 0)


def test_blocks_do_not_touch():
    labels = block_labels((30, 30), 4, 8)
    for c in range(1, 5):
        rows, cols = np.nonzero(labels == c)
        r0, r1, c0, c1 = rows.min(), rows.max(), cols.min(), cols.max()
        ring = labels[max(r0 - 1, 0):r1 + 2, max(c0 - 1, 0):c1 + 2]
        assert set(np.unique(ring)) <= {0, c}
