package inv;

import static org.junit.Assert.assertEquals;

import org.junit.Test;

public class ReportWriterTest {
    @Test
    public void pads() {
        ReportWriter w = new ReportWriter(4);
        w.line("ab");
        assertEquals("ab  ", w.get(0));
    }
}
