package inv;

import static org.junit.Assert.assertEquals;

import java.util.function.IntUnaryOperator;
import org.junit.Test;

public class WarehouseTest {
    @Test
    public void emptyTotal() {
        assertEquals(0, new Warehouse("w").total());
    }

    @Test
    public void badLoad() {
        assertEquals(-1, new Warehouse("w").load("x"));
    }

    @Test
    public void describes() {
        assertEquals("?", new Warehouse(null).describe());
        assertEquals("w", new Warehouse("w").describe());
    }

    @Test
    public void slotIndex() {
        Warehouse.Slot s = new Warehouse.Slot();
        s.row = 2;
        s.col = 3;
        IntUnaryOperator shift = x -> x + s.index();
        assertEquals(24, shift.applyAsInt(1));
    }
}
