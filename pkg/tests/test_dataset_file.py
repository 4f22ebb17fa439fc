import numpy as np
import pytest

from CITest.GaussCI import GaussianData
from utils.DatasetFile import dataset_to_csv, read_dataset, write_dataset
from utils.exceptions import ValidationException


def test_header_row_becomes_labels(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("x, y, z\n1.0, 2, 3\n4, 5.5, -6\n")
    data = read_dataset(path)
    assert data.labels == ("x", "y", "z")
    assert np.array_equal(data.columns, [[1.0, 2.0, 3.0], [4.0, 5.5, -6.0]])


def test_headerless_file_with_labels_given(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("1,2\n3,4\n5,6\n")
    data = read_dataset(path, labels=["a", "b"])
    assert (data.n, data.p) == (3, 2) and data.labels == ("a", "b")
    assert read_dataset(path).labels is None


@pytest.mark.parametrize("body", ["x,y\n1,2\n3,oops\n", "1,2\n3,\n", "1,2\n3,inf\n"])
def test_bad_cells_are_rejected(tmp_path, body):
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(ValidationException):
        read_dataset(path)


def test_written_dataset_reads_back_exactly(tmp_path):
    values = np.random.default_rng(8).standard_normal((20, 3))
    data = GaussianData(values, labels=["u", "v", "w"])
    path = write_dataset(data, tmp_path / "nested" / "out.csv")
    again = read_dataset(path)
    assert again.labels == data.labels
    assert np.array_equal(again.columns, values)
    assert dataset_to_csv(data) == path.read_text()


def test_unlabelled_dataset_gets_default_names():
    data = GaussianData(np.ones((2, 2)))
    assert dataset_to_csv(data).splitlines()[0] == "X0,X1"
